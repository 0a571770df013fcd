#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "topology.hpp"

namespace mtvq {

/// Target count n_t per linker type, ordered as the catalog.
struct RatioSpec {
    std::vector<std::size_t> counts;

    [[nodiscard]] std::size_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    }

    friend bool operator==(const RatioSpec &, const RatioSpec &) = default;
};

struct Penalties {
    double c_ratio = 200.0;
    double c_occ = 300.0;

    friend bool operator==(const Penalties &, const Penalties &) = default;
};

/// Everything a preset or topology file provides, before derived quantities
/// are computed.
struct ProblemInputs {
    SiteGraph graph;
    LinkerCatalog catalog;
    RatioSpec ratio;
    Penalties penalties;
    bool reconstructed = false;

    friend bool operator==(const ProblemInputs &, const ProblemInputs &) = default;
};

/// How the length of an edge is formed from the linkers at its endpoints.
enum class LengthForm {
    EndpointSum,  // L = sum_t l^t q_i^t + sum_t l^t q_j^t
    PairwiseSum,  // double sum over type pairs: EndpointSum scaled by |t|
};

struct CostOptions {
    LengthForm length_form = LengthForm::EndpointSum;
    /// Round each edge weight to this many decimals (negative: no rounding).
    int weight_decimals = -1;

    friend bool operator==(const CostOptions &, const CostOptions &) = default;
};

/// Fixed-width bitstring of |t| * N_i occupancy indicators. Bit k is qubit k,
/// and the text form prints bit 0 as the leftmost character.
class Configuration {
  public:
    static constexpr std::size_t kMaxBits = 64;

    Configuration() = default;

    Configuration(std::uint64_t mask, std::size_t size) : mask_(mask), size_(size) {
        if (size > kMaxBits) {
            fail(ErrorKind::Bound, "configurations are limited to 64 bits");
        }
        if (size < kMaxBits && (mask >> size) != 0) {
            fail(ErrorKind::Range, "mask has bits set beyond the configuration size");
        }
    }

    static Configuration from_string(std::string_view text) {
        if (text.size() > kMaxBits) {
            fail(ErrorKind::Bound, "bitstring longer than 64 characters");
        }
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '1') {
                mask |= std::uint64_t{1} << k;
            } else if (text[k] != '0') {
                fail(ErrorKind::Parse, "bitstring may only contain '0' and '1', found '" +
                                           std::string(1, text[k]) + "'");
            }
        }
        return {mask, text.size()};
    }

    [[nodiscard]] std::string to_string() const {
        std::string text(size_, '0');
        for (std::size_t k = 0; k < size_; ++k) {
            if (bit(k)) {
                text[k] = '1';
            }
        }
        return text;
    }

    [[nodiscard]] bool bit(std::size_t k) const noexcept { return (mask_ >> k) & 1U; }
    [[nodiscard]] std::uint64_t mask() const noexcept { return mask_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    friend bool operator==(const Configuration &, const Configuration &) = default;
    friend auto operator<=>(const Configuration &, const Configuration &) = default;

  private:
    std::uint64_t mask_ = 0;
    std::size_t size_ = 0;
};

/// Site-major, type-minor qubit layout: q_i^t lives at bit i * |t| + t.
inline std::size_t qubit_index(std::size_t site, std::size_t type_index,
                               std::size_t n_types, std::size_t n_sites) {
    if (type_index >= n_types || site >= n_sites) {
        fail(ErrorKind::Range, "qubit (site " + std::to_string(site) + ", type " +
                                   std::to_string(type_index) + ") outside " +
                                   std::to_string(n_sites) + " sites x " +
                                   std::to_string(n_types) + " types");
    }
    return site * n_types + type_index;
}

class ProblemSpec;

struct CostBreakdown {
    double ratio = 0.0;     // unweighted
    double occupancy = 0.0; // unweighted
    double balance = 0.0;
    double total = 0.0;
};

/// Validated problem: graph, catalog, ratio, penalty weights and the derived
/// mean edge length. Immutable and safe to share between threads.
class ProblemSpec {
  public:
    explicit ProblemSpec(ProblemInputs inputs, CostOptions options = {})
        : inputs_(std::move(inputs)), options_(options) {
        const auto &catalog = inputs_.catalog;
        const auto &ratio = inputs_.ratio;
        if (catalog.size() == 0) {
            fail(ErrorKind::Invariant, "linker catalog must not be empty");
        }
        if (ratio.counts.size() != catalog.size()) {
            fail(ErrorKind::Invariant, "ratio lists " + std::to_string(ratio.counts.size()) +
                                           " counts for " + std::to_string(catalog.size()) +
                                           " linker types");
        }
        if (ratio.total() != inputs_.graph.n_sites()) {
            fail(ErrorKind::Invariant, "ratio counts sum to " + std::to_string(ratio.total()) +
                                           " but the graph has " +
                                           std::to_string(inputs_.graph.n_sites()) + " sites");
        }
        const auto &pen = inputs_.penalties;
        if (!(pen.c_ratio > 0.0) || !(pen.c_occ > 0.0) || !std::isfinite(pen.c_ratio) ||
            !std::isfinite(pen.c_occ)) {
            fail(ErrorKind::Invariant, "penalty constants must be positive and finite");
        }
        if (n_qubits() > Configuration::kMaxBits) {
            fail(ErrorKind::Bound, "problem needs " + std::to_string(n_qubits()) +
                                       " bits; at most 64 are supported");
        }

        weights_ = inputs_.graph.weights();
        if (options_.weight_decimals >= 0) {
            const double scale = std::pow(10.0, options_.weight_decimals);
            for (auto &w : weights_) {
                w = std::round(w * scale) / scale;
            }
        }
        length_scale_ = options_.length_form == LengthForm::PairwiseSum
                            ? static_cast<double>(catalog.size())
                            : 1.0;

        double weighted = 0.0;
        for (std::size_t t = 0; t < catalog.size(); ++t) {
            weighted += static_cast<double>(ratio.counts[t]) * catalog[t].characteristic_length;
        }
        mean_edge_length_ =
            length_scale_ * 2.0 * weighted / static_cast<double>(inputs_.graph.n_sites());
    }

    [[nodiscard]] const ProblemInputs &inputs() const noexcept { return inputs_; }
    [[nodiscard]] const SiteGraph &graph() const noexcept { return inputs_.graph; }
    [[nodiscard]] const LinkerCatalog &catalog() const noexcept { return inputs_.catalog; }
    [[nodiscard]] const RatioSpec &ratio() const noexcept { return inputs_.ratio; }
    [[nodiscard]] const Penalties &penalties() const noexcept { return inputs_.penalties; }
    [[nodiscard]] const CostOptions &options() const noexcept { return options_; }

    [[nodiscard]] std::size_t n_sites() const noexcept { return inputs_.graph.n_sites(); }
    [[nodiscard]] std::size_t n_types() const noexcept { return inputs_.catalog.size(); }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_sites() * n_types(); }

    /// Edge weights used by the balance term (after optional rounding).
    [[nodiscard]] const std::vector<double> &weights() const noexcept { return weights_; }
    [[nodiscard]] double mean_edge_length() const noexcept { return mean_edge_length_; }
    [[nodiscard]] double length_scale() const noexcept { return length_scale_; }

    [[nodiscard]] ProblemSpec with_alpha(double alpha) const {
        ProblemInputs next = inputs_;
        next.graph = inputs_.graph.with_alpha(alpha);
        return ProblemSpec(std::move(next), options_);
    }

    void check(const Configuration &config) const {
        if (config.size() != n_qubits()) {
            fail(ErrorKind::Invariant, "configuration has " + std::to_string(config.size()) +
                                           " bits, problem needs " +
                                           std::to_string(n_qubits()));
        }
    }

    /// All three terms in one pass over the bits.
    [[nodiscard]] CostBreakdown evaluate(const Configuration &config) const {
        check(config);
        return evaluate_mask(config.mask());
    }

    /// Unchecked variant for enumeration loops; `mask` must fit n_qubits().
    [[nodiscard]] CostBreakdown evaluate_mask(std::uint64_t mask) const {
        const std::size_t types = n_types();
        const std::size_t sites = n_sites();
        const auto &catalog = inputs_.catalog;

        // Per-type counts fit on the stack for any catalog that fits in 64 bits.
        std::size_t type_count[Configuration::kMaxBits] = {};
        double site_length[Configuration::kMaxBits] = {};
        CostBreakdown out;
        for (std::size_t i = 0; i < sites; ++i) {
            std::size_t occupied = 0;
            for (std::size_t t = 0; t < types; ++t) {
                if ((mask >> (i * types + t)) & 1U) {
                    ++occupied;
                    ++type_count[t];
                    site_length[i] += catalog[t].characteristic_length;
                }
            }
            const double dev = static_cast<double>(occupied) - 1.0;
            out.occupancy += dev * dev;
        }
        for (std::size_t t = 0; t < types; ++t) {
            const double dev = static_cast<double>(type_count[t]) -
                               static_cast<double>(inputs_.ratio.counts[t]);
            out.ratio += dev * dev;
        }
        const auto &edges = inputs_.graph.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double length =
                length_scale_ * (site_length[edges[e].i] + site_length[edges[e].j]);
            const double dev = length - mean_edge_length_;
            out.balance += weights_[e] * dev * dev;
        }
        out.total = inputs_.penalties.c_ratio * out.ratio +
                    inputs_.penalties.c_occ * out.occupancy + out.balance;
        return out;
    }

  private:
    ProblemInputs inputs_;
    CostOptions options_;
    std::vector<double> weights_;
    double length_scale_ = 1.0;
    double mean_edge_length_ = 0.0;
};

inline std::size_t qubit_index(const ProblemSpec &spec, std::size_t site, std::size_t type) {
    return qubit_index(site, type, spec.n_types(), spec.n_sites());
}

/// sum_t (sum_i q_i^t - n_t)^2
inline double ratio_cost(const Configuration &config, const ProblemSpec &spec) {
    spec.check(config);
    double cost = 0.0;
    for (std::size_t t = 0; t < spec.n_types(); ++t) {
        double placed = 0.0;
        for (std::size_t i = 0; i < spec.n_sites(); ++i) {
            placed += config.bit(qubit_index(spec, i, t)) ? 1.0 : 0.0;
        }
        const double dev = placed - static_cast<double>(spec.ratio().counts[t]);
        cost += dev * dev;
    }
    return cost;
}

/// sum_i (sum_t q_i^t - 1)^2
inline double occupancy_cost(const Configuration &config, const ProblemSpec &spec) {
    spec.check(config);
    double cost = 0.0;
    for (std::size_t i = 0; i < spec.n_sites(); ++i) {
        double occupied = 0.0;
        for (std::size_t t = 0; t < spec.n_types(); ++t) {
            occupied += config.bit(qubit_index(spec, i, t)) ? 1.0 : 0.0;
        }
        const double dev = occupied - 1.0;
        cost += dev * dev;
    }
    return cost;
}

/// Sum of the characteristic lengths of the linkers sitting on both ends of
/// `edge`, scaled by |t| under LengthForm::PairwiseSum.
inline double edge_length(const Configuration &config, const Edge &edge,
                          const ProblemSpec &spec) {
    spec.check(config);
    if (edge.i >= spec.n_sites() || edge.j >= spec.n_sites()) {
        fail(ErrorKind::Range, "edge endpoint outside the problem's sites");
    }
    double length = 0.0;
    for (std::size_t t = 0; t < spec.n_types(); ++t) {
        const double l = spec.catalog()[t].characteristic_length;
        if (config.bit(qubit_index(spec, edge.i, t))) {
            length += l;
        }
        if (config.bit(qubit_index(spec, edge.j, t))) {
            length += l;
        }
    }
    return spec.length_scale() * length;
}

/// Reference length (2 / N_i) * sum_t n_t l^t; depends only on the spec.
inline double mean_edge_length(const ProblemSpec &spec) { return spec.mean_edge_length(); }

/// sum_edges w_ij (L(q, edge) - mean length)^2
inline double balance_cost(const Configuration &config, const ProblemSpec &spec) {
    const auto &edges = spec.graph().edges();
    double cost = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double dev = edge_length(config, edges[e], spec) - spec.mean_edge_length();
        cost += spec.weights()[e] * dev * dev;
    }
    return cost;
}

inline double total_cost(const Configuration &config, const ProblemSpec &spec) {
    return spec.evaluate(config).total;
}

/// True when every site holds exactly one linker and the ratio is met.
inline bool satisfies_constraints(const Configuration &config, const ProblemSpec &spec) {
    const auto parts = spec.evaluate(config);
    return parts.ratio == 0.0 && parts.occupancy == 0.0;
}

} // namespace mtvq
