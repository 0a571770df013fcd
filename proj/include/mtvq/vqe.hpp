#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "exact_solver.hpp"
#include "hamiltonian.hpp"
#include "rng.hpp"
#include "spsa.hpp"
#include "statevector.hpp"

namespace mtvq {

/// How the `runs` final distributions are produced.
enum class RunMode {
    Independent, // every run optimizes from its own random start, then samples
    Resample,    // one optimization; its final circuit is sampled `runs` times
};

struct VqeSettings {
    std::size_t iterations = 300;
    std::uint64_t shots = 1024;
    std::size_t runs = 128;
    std::uint64_t master_seed = 2025;
    SpsaSettings spsa; // its `iterations` field is overridden by the one above
    /// Optimize against the infinite-shot expectation instead of sampled counts.
    bool exact_expectation = false;
    RunMode mode = RunMode::Independent;
    /// Worker threads for independent runs; 0 uses the hardware concurrency.
    std::size_t threads = 0;
};

/// Diagonal Hamiltonian tabulated over every basis index.
class CostTable {
  public:
    CostTable(std::size_t n_qubits, std::vector<double> values)
        : n_qubits_(n_qubits), values_(std::move(values)) {
        if (n_qubits == 0 || n_qubits > kMaxSimulatedQubits ||
            values_.size() != (std::size_t{1} << n_qubits)) {
            fail(ErrorKind::Bound, "cost table size does not match a simulable register");
        }
    }

    explicit CostTable(const ProblemSpec &spec) : n_qubits_(spec.n_qubits()) {
        if (n_qubits_ > kMaxSimulatedQubits) {
            fail(ErrorKind::Bound, "problem needs " + std::to_string(n_qubits_) +
                                       " qubits; the simulator supports " +
                                       std::to_string(kMaxSimulatedQubits));
        }
        values_.resize(std::size_t{1} << n_qubits_);
        for (std::size_t k = 0; k < values_.size(); ++k) {
            values_[k] = spec.evaluate_mask(k).total;
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] double operator[](std::uint64_t index) const { return values_[index]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  private:
    std::size_t n_qubits_;
    std::vector<double> values_;
};

/// Sparse probability map over basis indices.
struct Distribution {
    std::size_t n_qubits = 0;
    std::map<std::uint64_t, double> probabilities;

    [[nodiscard]] double total() const {
        double sum = 0.0;
        for (const auto &[index, p] : probabilities) {
            sum += p;
        }
        return sum;
    }

    friend bool operator==(const Distribution &, const Distribution &) = default;
};

struct RunResult {
    std::vector<double> theta;
    Distribution distribution;
    std::vector<double> trace; // one expectation estimate per SPSA iteration

    friend bool operator==(const RunResult &, const RunResult &) = default;
};

inline Distribution to_distribution(const Counts &counts) {
    Distribution dist{counts.n_qubits, {}};
    for (const auto &outcome : counts.outcomes) {
        dist.probabilities[outcome.index] =
            static_cast<double>(outcome.count) / static_cast<double>(counts.shots);
    }
    return dist;
}

namespace detail {

inline void check_counts(const Counts &counts, std::uint64_t shots) {
    std::uint64_t seen = 0;
    for (const auto &outcome : counts.outcomes) {
        seen += outcome.count;
    }
    if (shots == 0 || seen != shots) {
        fail(ErrorKind::Invariant, "counts add up to " + std::to_string(seen) + " but shots = " +
                                       std::to_string(shots));
    }
}

} // namespace detail

/// E = sum_x (count_x / shots) H(x).
inline double expectation(const Counts &counts, std::uint64_t shots, const CostTable &costs) {
    detail::check_counts(counts, shots);
    double sum = 0.0;
    for (const auto &outcome : counts.outcomes) {
        sum += static_cast<double>(outcome.count) * costs[outcome.index];
    }
    return sum / static_cast<double>(shots);
}

inline double expectation(const Counts &counts, std::uint64_t shots, const ProblemSpec &spec) {
    detail::check_counts(counts, shots);
    double sum = 0.0;
    for (const auto &outcome : counts.outcomes) {
        sum += static_cast<double>(outcome.count) *
               total_cost(Configuration(outcome.index, spec.n_qubits()), spec);
    }
    return sum / static_cast<double>(shots);
}

/// Infinite-shot limit: sum_x |amp_x|^2 H(x).
inline double exact_expectation(std::span<const double> probabilities, const CostTable &costs) {
    double sum = 0.0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        sum += probabilities[k] * costs[k];
    }
    return sum;
}

inline void check_settings(const VqeSettings &settings) {
    if (settings.iterations == 0) {
        fail(ErrorKind::Range, "VQE needs at least one iteration");
    }
    if (settings.shots == 0) {
        fail(ErrorKind::Range, "VQE needs at least one shot");
    }
    if (settings.runs == 0) {
        fail(ErrorKind::Range, "VQE needs at least one run");
    }
}

namespace detail {

inline SpsaResult optimize(const CostTable &costs, const VqeSettings &settings,
                           RngStream &rng) {
    const std::size_t n = costs.n_qubits();
    std::vector<double> theta(2 * n);
    for (auto &angle : theta) {
        angle = rng.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    }
    const Objective objective = [&](std::span<const double> params) {
        const auto state = two_local_state(params, n);
        if (settings.exact_expectation) {
            return exact_expectation(exact_probabilities(state), costs);
        }
        return expectation(sample(state, settings.shots, rng), settings.shots, costs);
    };
    SpsaSettings spsa = settings.spsa;
    spsa.iterations = settings.iterations;
    return spsa_minimize(objective, std::move(theta), spsa, rng);
}

} // namespace detail

/// One optimize-then-sample run on stream (master_seed, run_index).
inline RunResult run_vqe(const CostTable &costs, const VqeSettings &settings,
                         std::uint64_t run_index) {
    check_settings(settings);
    RngStream rng(settings.master_seed, run_index);
    auto optimized = detail::optimize(costs, settings, rng);
    const auto state = two_local_state(optimized.theta, costs.n_qubits());
    return {std::move(optimized.theta), to_distribution(sample(state, settings.shots, rng)),
            std::move(optimized.trace)};
}

inline RunResult run_vqe(const ProblemSpec &spec, const VqeSettings &settings,
                         std::uint64_t run_index) {
    check_settings(settings);
    return run_vqe(CostTable(spec), settings, run_index);
}

inline std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls body(r) for r in [0, count) on up to `threads` workers. The first
/// failure (lowest index) is rethrown with its index attached.
template <typename Body>
void parallel_for_runs(std::size_t count, std::size_t threads, Body body) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t r = next++; r < count; r = next++) {
            try {
                body(r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min(resolve_threads(threads), count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (std::size_t r = 0; r < count; ++r) {
        if (!errors[r]) {
            continue;
        }
        try {
            std::rethrow_exception(errors[r]);
        } catch (const Error &e) {
            throw Error(e.kind(), "run " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception &e) {
            throw Error(ErrorKind::Numeric, "run " + std::to_string(r) + ": " + e.what());
        }
    }
}

/// All `settings.runs` runs. Results are indexed by run and do not depend on
/// the thread count.
inline std::vector<RunResult> run_all(const CostTable &costs, const VqeSettings &settings) {
    check_settings(settings);
    std::vector<RunResult> results(settings.runs);
    if (settings.mode == RunMode::Resample) {
        RngStream rng(settings.master_seed, 0);
        auto optimized = detail::optimize(costs, settings, rng);
        const auto state = two_local_state(optimized.theta, costs.n_qubits());
        const auto probs = exact_probabilities(state);
        for (std::size_t r = 0; r < settings.runs; ++r) {
            RngStream sampler(settings.master_seed, settings.runs + r);
            results[r] = {optimized.theta,
                          to_distribution(sample_probabilities(probs, costs.n_qubits(),
                                                               settings.shots, sampler)),
                          optimized.trace};
        }
        return results;
    }
    parallel_for_runs(settings.runs, settings.threads,
                      [&](std::size_t r) { results[r] = run_vqe(costs, settings, r); });
    return results;
}

/// Per-bitstring mean over runs, renormalized to sum to one.
inline Distribution aggregate(std::span<const RunResult> results) {
    if (results.empty()) {
        fail(ErrorKind::Range, "aggregate needs at least one run");
    }
    Distribution out{results.front().distribution.n_qubits, {}};
    for (const auto &result : results) {
        if (result.distribution.n_qubits != out.n_qubits) {
            fail(ErrorKind::Invariant, "runs disagree on the number of qubits");
        }
        for (const auto &[index, p] : result.distribution.probabilities) {
            out.probabilities[index] += p;
        }
    }
    double total = 0.0;
    for (const auto &[index, p] : out.probabilities) {
        total += p;
    }
    for (auto &[index, p] : out.probabilities) {
        p /= total;
    }
    return out;
}

/// Most probable basis index. Ties go to the lexicographically smallest
/// bitstring (qubit 0 leftmost).
inline std::uint64_t argmax(const Distribution &dist) {
    if (dist.probabilities.empty()) {
        fail(ErrorKind::Range, "argmax of an empty distribution");
    }
    auto best = dist.probabilities.begin();
    for (auto it = std::next(best); it != dist.probabilities.end(); ++it) {
        if (it->second > best->second ||
            (it->second == best->second && basis_string(it->first, dist.n_qubits) <
                                               basis_string(best->first, dist.n_qubits))) {
            best = it;
        }
    }
    return best->first;
}

/// True when the run's most probable outcome is one of the exact minimizers.
inline bool is_success(const Distribution &dist, const SpectrumEntry &ground) {
    const auto top = argmax(dist);
    return std::any_of(ground.configurations.begin(), ground.configurations.end(),
                       [top](const Configuration &c) { return c.mask() == top; });
}

struct SweepRow {
    double alpha = 0.0;
    std::size_t successes = 0;
    std::size_t runs = 0;
};

/// For each alpha: reweight the spatial edges, find the exact ground state and
/// count the runs whose final distribution peaks on it.
inline std::vector<SweepRow> alpha_sweep(const ProblemSpec &base, std::span<const double> alphas,
                                         const VqeSettings &settings,
                                         const EnumerationOptions &enumeration = {}) {
    check_settings(settings);
    if (alphas.empty()) {
        fail(ErrorKind::Range, "alpha sweep needs at least one alpha");
    }
    for (const double alpha : alphas) {
        check_alpha(alpha);
    }
    std::vector<SweepRow> rows;
    for (const double alpha : alphas) {
        const auto spec = base.with_alpha(alpha);
        const auto ground = ground_state(spec, enumeration);
        const auto results = run_all(CostTable(spec), settings);
        SweepRow row{alpha, 0, results.size()};
        for (const auto &result : results) {
            row.successes += is_success(result.distribution, ground) ? 1 : 0;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace mtvq
