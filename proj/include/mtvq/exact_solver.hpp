#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "hamiltonian.hpp"

namespace mtvq {

struct SpectrumEntry {
    double hamiltonian_value = 0.0;
    std::vector<Configuration> configurations; // ascending by bitmask
};

struct EnumerationOptions {
    std::size_t max_bits = 24;
    std::size_t threads = 1;
    /// Values closer than this to a cluster's smallest member join that cluster.
    double tolerance = 1e-9;
};

namespace detail {

/// Keeps every (value, mask) pair that can still belong to one of the k
/// lowest value clusters.
class LowestClusters {
  public:
    LowestClusters(std::size_t k, double tolerance) : k_(k), tolerance_(tolerance) {}

    void offer(double value, std::uint64_t mask) {
        if (value > cutoff_) {
            return;
        }
        buckets_[value].push_back(mask);
        if (buckets_.size() > k_) {
            prune();
        }
    }

    void merge(const LowestClusters &other) {
        for (const auto &[value, masks] : other.buckets_) {
            for (const auto mask : masks) {
                offer(value, mask);
            }
        }
    }

    [[nodiscard]] std::vector<SpectrumEntry> finish(std::size_t n_bits) {
        prune();
        std::vector<SpectrumEntry> out;
        double start = 0.0;
        for (const auto &[value, masks] : buckets_) {
            if (out.empty() || value - start > tolerance_) {
                out.push_back({value, {}});
                start = value;
            }
            for (const auto mask : masks) {
                out.back().configurations.emplace_back(mask, n_bits);
            }
        }
        for (auto &entry : out) {
            std::sort(entry.configurations.begin(), entry.configurations.end(),
                      [](const Configuration &a, const Configuration &b) {
                          return a.mask() < b.mask();
                      });
        }
        return out;
    }

  private:
    void prune() {
        std::size_t clusters = 0;
        double start = 0.0;
        for (auto it = buckets_.begin(); it != buckets_.end(); ++it) {
            if (clusters == 0 || it->first - start > tolerance_) {
                if (clusters == k_) {
                    buckets_.erase(it, buckets_.end());
                    cutoff_ = start + tolerance_;
                    return;
                }
                ++clusters;
                start = it->first;
            }
        }
        if (clusters == k_) {
            cutoff_ = start + tolerance_;
        }
    }

    std::size_t k_;
    double tolerance_;
    double cutoff_ = std::numeric_limits<double>::infinity();
    std::map<double, std::vector<std::uint64_t>> buckets_;
};

inline void check_enumerable(const ProblemSpec &spec, const EnumerationOptions &options) {
    if (spec.n_qubits() > options.max_bits || spec.n_qubits() >= 63) {
        fail(ErrorKind::Bound, "exhaustive enumeration of " + std::to_string(spec.n_qubits()) +
                                   " bits exceeds the bound of " +
                                   std::to_string(options.max_bits));
    }
}

} // namespace detail

/// The k lowest distinct values of the total Hamiltonian over all 2^n
/// bitstrings, ascending, each with every configuration attaining it.
inline std::vector<SpectrumEntry> spectrum(const ProblemSpec &spec, std::size_t k,
                                           const EnumerationOptions &options = {}) {
    if (k == 0) {
        fail(ErrorKind::Range, "spectrum needs k >= 1");
    }
    detail::check_enumerable(spec, options);
    const std::uint64_t space = std::uint64_t{1} << spec.n_qubits();
    const std::size_t threads =
        std::max<std::size_t>(1, std::min<std::uint64_t>(options.threads, space));

    std::vector<detail::LowestClusters> partial(threads, {k, options.tolerance});
    const auto scan = [&](std::size_t part) {
        const std::uint64_t begin = space * part / threads;
        const std::uint64_t end = space * (part + 1) / threads;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            partial[part].offer(spec.evaluate_mask(mask).total, mask);
        }
    };
    if (threads == 1) {
        scan(0);
    } else {
        std::vector<std::thread> workers;
        for (std::size_t part = 0; part < threads; ++part) {
            workers.emplace_back(scan, part);
        }
        for (auto &worker : workers) {
            worker.join();
        }
    }
    for (std::size_t part = 1; part < threads; ++part) {
        partial[0].merge(partial[part]);
    }
    return partial[0].finish(spec.n_qubits());
}

inline SpectrumEntry ground_state(const ProblemSpec &spec, const EnumerationOptions &options = {}) {
    return spectrum(spec, 1, options).front();
}

/// Range over the configurations with exactly one linker per site and the
/// target count of each type, in lexicographic order of the per-site type
/// sequence.
class ValidConfigurations {
  public:
    class iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Configuration;
        using difference_type = std::ptrdiff_t;
        using pointer = const Configuration *;
        using reference = Configuration;

        iterator() = default;

        reference operator*() const {
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < types_.size(); ++i) {
                mask |= std::uint64_t{1} << (i * n_types_ + types_[i]);
            }
            return {mask, types_.size() * n_types_};
        }

        iterator &operator++() {
            if (!std::next_permutation(types_.begin(), types_.end())) {
                done_ = true;
            }
            return *this;
        }

        void operator++(int) { ++*this; }

        friend bool operator==(const iterator &a, const iterator &b) {
            return a.done_ == b.done_ && (a.done_ || a.types_ == b.types_);
        }

      private:
        friend class ValidConfigurations;
        std::vector<std::size_t> types_;
        std::size_t n_types_ = 0;
        bool done_ = true;
    };

    explicit ValidConfigurations(const ProblemSpec &spec) : n_types_(spec.n_types()) {
        for (std::size_t t = 0; t < spec.n_types(); ++t) {
            first_.insert(first_.end(), spec.ratio().counts[t], t);
        }
    }

    [[nodiscard]] iterator begin() const {
        iterator it;
        it.types_ = first_;
        it.n_types_ = n_types_;
        it.done_ = false;
        return it;
    }
    [[nodiscard]] iterator end() const { return {}; }

  private:
    std::vector<std::size_t> first_;
    std::size_t n_types_;
};

inline ValidConfigurations enumerate_valid(const ProblemSpec &spec) {
    return ValidConfigurations(spec);
}

using BigCount = boost::multiprecision::cpp_int;

/// Multinomial coefficient N! / prod_t n_t!, exact.
inline BigCount count_configs(std::size_t n_sites, const std::vector<std::size_t> &ratio) {
    std::size_t sum = 0;
    for (const auto n : ratio) {
        sum += n;
    }
    if (sum != n_sites) {
        fail(ErrorKind::Invariant, "ratio counts sum to " + std::to_string(sum) + ", expected " +
                                       std::to_string(n_sites));
    }
    // Product of binomials C(placed + n, n); each partial product is an integer.
    BigCount count = 1;
    std::size_t placed = 0;
    for (const auto n : ratio) {
        for (std::size_t r = 1; r <= n; ++r) {
            count *= placed + r;
            count /= r;
        }
        placed += n;
    }
    return count;
}

} // namespace mtvq
