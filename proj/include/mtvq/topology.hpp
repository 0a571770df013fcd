#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace mtvq {

struct LinkerType {
    std::string label;
    double characteristic_length = 0.0; // Angstrom

    friend bool operator==(const LinkerType &, const LinkerType &) = default;
};

/// Ordered set of linker types. The order fixes the qubit layout, so two
/// catalogs with the same linkers in a different order are different problems.
class LinkerCatalog {
  public:
    LinkerCatalog() = default;

    explicit LinkerCatalog(std::vector<LinkerType> linkers)
        : linkers_(std::move(linkers)) {
        if (linkers_.empty()) {
            fail(ErrorKind::Invariant, "linker catalog must not be empty");
        }
        std::set<std::string> seen;
        for (const auto &linker : linkers_) {
            if (!(linker.characteristic_length > 0.0) ||
                !std::isfinite(linker.characteristic_length)) {
                fail(ErrorKind::Invariant,
                     "linker '" + linker.label +
                         "' must have a positive finite length");
            }
            if (!seen.insert(linker.label).second) {
                fail(ErrorKind::Invariant,
                     "duplicate linker label '" + linker.label + "'");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return linkers_.size(); }
    [[nodiscard]] const LinkerType &operator[](std::size_t t) const {
        return linkers_.at(t);
    }
    [[nodiscard]] const std::vector<LinkerType> &linkers() const noexcept {
        return linkers_;
    }

    /// Position of `label` in the catalog, or size() when absent.
    [[nodiscard]] std::size_t index_of(const std::string &label) const {
        for (std::size_t t = 0; t < linkers_.size(); ++t) {
            if (linkers_[t].label == label) {
                return t;
            }
        }
        return linkers_.size();
    }

    friend bool operator==(const LinkerCatalog &, const LinkerCatalog &) = default;

  private:
    std::vector<LinkerType> linkers_;
};

/// Topological edges are direct (first-neighbour) connections weighted d^1.
/// Spatial edges are second-neighbour adjacencies weighted d^alpha.
enum class EdgeKind { Topological, Spatial };

struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double distance = 0.0; // Angstrom
    EdgeKind kind = EdgeKind::Topological;

    friend bool operator==(const Edge &, const Edge &) = default;
};

inline void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        fail(ErrorKind::Invariant,
             "alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
}

/// Connection weight w_ij = d_ij^alpha, with alpha forced to 1 for
/// topological connections.
inline double edge_weight(const Edge &edge, double alpha) {
    if (!(edge.distance > 0.0) || !std::isfinite(edge.distance)) {
        fail(ErrorKind::Invariant, "edge (" + std::to_string(edge.i) + ", " +
                                       std::to_string(edge.j) +
                                       ") must have a positive finite distance");
    }
    check_alpha(alpha);
    if (edge.kind == EdgeKind::Topological) {
        return edge.distance;
    }
    return std::pow(edge.distance, alpha);
}

/// Weighted linker-site graph. Edges are stored canonically with i < j and
/// carry their precomputed weight. Instances are immutable once built.
class SiteGraph {
  public:
    SiteGraph() = default;

    [[nodiscard]] std::size_t n_sites() const noexcept { return n_sites_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::vector<Edge> &edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<double> &weights() const noexcept {
        return weights_;
    }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }

    [[nodiscard]] std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> degree(n_sites_, 0);
        for (const auto &edge : edges_) {
            ++degree[edge.i];
            ++degree[edge.j];
        }
        return degree;
    }

    /// Same connectivity with spatial edges reweighted for a new alpha.
    [[nodiscard]] SiteGraph with_alpha(double alpha) const {
        return SiteGraph(n_sites_, edges_, alpha);
    }

    friend bool operator==(const SiteGraph &a, const SiteGraph &b) {
        return a.n_sites_ == b.n_sites_ && a.alpha_ == b.alpha_ &&
               a.edges_ == b.edges_;
    }

    friend SiteGraph build_graph(std::size_t n_sites, std::vector<Edge> edges,
                                 double alpha);

  private:
    SiteGraph(std::size_t n_sites, std::vector<Edge> edges, double alpha)
        : n_sites_(n_sites), alpha_(alpha), edges_(std::move(edges)) {
        weights_.reserve(edges_.size());
        for (const auto &edge : edges_) {
            weights_.push_back(edge_weight(edge, alpha_));
        }
    }

    std::size_t n_sites_ = 0;
    double alpha_ = 1.0;
    std::vector<Edge> edges_;
    std::vector<double> weights_;
};

/// Validates and canonicalizes an edge list. Edge order is preserved; each
/// edge is flipped so that i < j.
inline SiteGraph build_graph(std::size_t n_sites, std::vector<Edge> edges,
                             double alpha) {
    check_alpha(alpha);
    if (n_sites == 0) {
        fail(ErrorKind::Invariant, "graph needs at least one site");
    }
    if (edges.empty()) {
        fail(ErrorKind::Invariant, "graph needs at least one edge");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto &edge : edges) {
        if (edge.i >= n_sites || edge.j >= n_sites) {
            fail(ErrorKind::Range, "edge (" + std::to_string(edge.i) + ", " +
                                       std::to_string(edge.j) +
                                       ") references a site >= " +
                                       std::to_string(n_sites));
        }
        if (edge.i == edge.j) {
            fail(ErrorKind::Invariant,
                 "self-loop at site " + std::to_string(edge.i));
        }
        if (edge.i > edge.j) {
            std::swap(edge.i, edge.j);
        }
        if (!seen.emplace(edge.i, edge.j).second) {
            fail(ErrorKind::Invariant, "duplicate edge (" + std::to_string(edge.i) +
                                           ", " + std::to_string(edge.j) + ")");
        }
    }
    return SiteGraph(n_sites, std::move(edges), alpha);
}

} // namespace mtvq
