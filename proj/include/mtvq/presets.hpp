#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "hamiltonian.hpp"
#include "topology.hpp"

namespace mtvq {

// The four built-in frameworks. Their edge lists are reconstructions: only the
// site counts, distances, weights and linker lengths are published, so every
// preset carries reconstructed = true.

namespace detail {

// Honeycomb net, 2x2 periodic cell. Site 2c is the A-sublattice vertex of
// cell c, site 2c+1 the B vertex (cells 0..3 = (0,0), (1,0), (0,1), (1,1)).
// Nearest neighbours join A(c) to B(c), B(c - x), B(c - y). On the 2x2 torus
// the six second neighbours of a vertex collapse onto the three other cells of
// its sublattice, so each sublattice forms a K4.
inline std::vector<Edge> honeycomb_edges(double d_topological, double d_spatial) {
    const auto topological = [&](std::size_t i, std::size_t j) {
        return Edge{i, j, d_topological, EdgeKind::Topological};
    };
    const auto spatial = [&](std::size_t i, std::size_t j) {
        return Edge{i, j, d_spatial, EdgeKind::Spatial};
    };
    return {
        topological(0, 1), topological(0, 3), topological(0, 5),
        topological(1, 2), topological(2, 3), topological(2, 7),
        topological(1, 4), topological(4, 5), topological(4, 7),
        topological(3, 6), topological(5, 6), topological(6, 7),
        spatial(0, 2), spatial(0, 4), spatial(0, 6),
        spatial(2, 4), spatial(2, 6), spatial(4, 6),
        spatial(1, 3), spatial(1, 5), spatial(1, 7),
        spatial(3, 5), spatial(3, 7), spatial(5, 7),
    };
}

// ith-d cell reduced to six sites: a topological hexagon 0-1-2-3-4-5 plus the
// three antipodal spatial contacts. The result is K_{3,3}, so alternating
// linkers leave every edge at the mean length.
inline std::vector<Edge> ith_d_edges(double d) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t j = (i + 1) % 6;
        edges.push_back({std::min(i, j), std::max(i, j), d, EdgeKind::Topological});
    }
    for (std::size_t i = 0; i < 3; ++i) {
        edges.push_back({i, i + 3, d, EdgeKind::Spatial});
    }
    return edges;
}

// Kagome (kgm) cell: the six linker sites are the six bonds of one primitive
// cell, even sites on the up triangle and odd sites on the down triangle.
// Two bonds meeting at a node sit 1.5 A apart at 60 deg (same triangle),
// 2.6 A at 120 deg and 3.0 A when collinear. Every pair of bonds shares a node
// somewhere in the periodic net, so the graph is K6.
inline std::vector<Edge> kagome_edges() {
    const auto topological = [](std::size_t i, std::size_t j, double d) {
        return Edge{i, j, d, EdgeKind::Topological};
    };
    return {
        topological(0, 2, 1.5), topological(0, 4, 1.5), topological(2, 4, 1.5),
        topological(1, 3, 1.5), topological(1, 5, 1.5), topological(3, 5, 1.5),
        topological(0, 3, 2.6), topological(0, 5, 2.6), topological(1, 2, 2.6),
        topological(1, 4, 2.6), topological(2, 5, 2.6), topological(3, 4, 2.6),
        topological(0, 1, 3.0), topological(2, 3, 3.0), topological(4, 5, 3.0),
    };
}

inline ProblemInputs make_preset(std::size_t n_sites, std::vector<Edge> edges, double alpha,
                                 std::vector<LinkerType> linkers,
                                 std::vector<std::size_t> ratio) {
    return ProblemInputs{build_graph(n_sites, std::move(edges), alpha),
                         LinkerCatalog(std::move(linkers)), RatioSpec{std::move(ratio)},
                         Penalties{200.0, 300.0}, true};
}

} // namespace detail

inline constexpr std::array<std::string_view, 4> kPresetNames = {
    "cu-thq-hhtp", "py-mv-dba-cof", "muf-7", "sioc-cof2"};

/// Topology name of a preset, for listings.
inline std::string_view preset_topology(std::string_view name) {
    if (name == "cu-thq-hhtp" || name == "py-mv-dba-cof") {
        return "hcb";
    }
    if (name == "muf-7") {
        return "ith-d";
    }
    if (name == "sioc-cof2") {
        return "kgm";
    }
    fail(ErrorKind::Invariant, "unknown preset '" + std::string(name) + "'");
}

inline ProblemInputs preset(std::string_view name) {
    if (name == "cu-thq-hhtp") {
        return detail::make_preset(8, detail::honeycomb_edges(3.0, 5.2), 0.01,
                                   {{"THQ", 2.42}, {"HHTP", 4.87}}, {4, 4});
    }
    if (name == "py-mv-dba-cof") {
        return detail::make_preset(8, detail::honeycomb_edges(3.0, 5.2), 0.1,
                                   {{"DBA[12]", 8.027}, {"DBA[18]", 10.516}}, {4, 4});
    }
    if (name == "muf-7") {
        return detail::make_preset(6, detail::ith_d_edges(3.92), 0.1,
                                   {{"BDC", 2.869}, {"BPDC", 5.025}}, {3, 3});
    }
    if (name == "sioc-cof2") {
        // All connections are topological, so alpha has no effect here.
        return detail::make_preset(6, detail::kagome_edges(), 1.0,
                                   {{"BPDA", 4.6}, {"TPDA", 6.89}}, {3, 3});
    }
    std::string known;
    for (const auto preset_name : kPresetNames) {
        known += (known.empty() ? "" : ", ") + std::string(preset_name);
    }
    fail(ErrorKind::Invariant, "unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

} // namespace mtvq
