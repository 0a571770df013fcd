#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "hamiltonian.hpp"
#include "topology.hpp"

namespace mtvq {

// Topology file layout:
//   {"n_sites": int, "alpha": float,
//    "edges": [{"i": int, "j": int, "d": float, "kind": "topological"|"spatial"}],
//    "linkers": [{"label": str, "length": float}],
//    "ratio": {label: int}, "c_ratio": float, "c_occ": float,
//    "reconstructed": bool}
// Every field except "reconstructed" (default false) is required.

namespace detail {

using json = nlohmann::ordered_json;

inline const json &require(const json &object, const char *key, const std::string &where) {
    if (!object.is_object()) {
        fail(ErrorKind::Schema, where + " must be a JSON object");
    }
    const auto it = object.find(key);
    if (it == object.end()) {
        fail(ErrorKind::Schema, where + " is missing field \"" + key + "\"");
    }
    return *it;
}

inline double require_number(const json &object, const char *key, const std::string &where) {
    const auto &value = require(object, key, where);
    if (!value.is_number()) {
        fail(ErrorKind::Schema, where + "." + key + " must be a number");
    }
    return value.get<double>();
}

inline std::int64_t require_integer(const json &object, const char *key,
                                    const std::string &where) {
    const auto &value = require(object, key, where);
    if (!value.is_number_integer()) {
        fail(ErrorKind::Schema, where + "." + key + " must be an integer");
    }
    return value.get<std::int64_t>();
}

inline std::size_t non_negative(std::int64_t value, const std::string &what) {
    if (value < 0) {
        fail(ErrorKind::Invariant, what + " must be non-negative, got " + std::to_string(value));
    }
    return static_cast<std::size_t>(value);
}

inline const char *kind_name(EdgeKind kind) {
    return kind == EdgeKind::Topological ? "topological" : "spatial";
}

} // namespace detail

/// Parses a topology document. Syntax problems raise ErrorKind::Parse, missing
/// or mistyped fields ErrorKind::Schema, and bad values ErrorKind::Invariant or
/// ErrorKind::Range.
inline ProblemInputs parse_problem(std::string_view text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::Parse, e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorKind::Schema, "top level must be a JSON object");
    }

    const auto n_sites =
        detail::non_negative(detail::require_integer(doc, "n_sites", "topology"), "n_sites");
    const double alpha = detail::require_number(doc, "alpha", "topology");

    const auto &edge_list = detail::require(doc, "edges", "topology");
    if (!edge_list.is_array()) {
        fail(ErrorKind::Schema, "topology.edges must be an array");
    }
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < edge_list.size(); ++k) {
        const std::string where = "edges[" + std::to_string(k) + "]";
        const auto &item = edge_list[k];
        Edge edge;
        edge.i = detail::non_negative(detail::require_integer(item, "i", where), where + ".i");
        edge.j = detail::non_negative(detail::require_integer(item, "j", where), where + ".j");
        edge.distance = detail::require_number(item, "d", where);
        const auto &kind = detail::require(item, "kind", where);
        if (kind == "topological") {
            edge.kind = EdgeKind::Topological;
        } else if (kind == "spatial") {
            edge.kind = EdgeKind::Spatial;
        } else {
            fail(ErrorKind::Schema, where + ".kind must be \"topological\" or \"spatial\"");
        }
        edges.push_back(edge);
    }

    const auto &linker_list = detail::require(doc, "linkers", "topology");
    if (!linker_list.is_array()) {
        fail(ErrorKind::Schema, "topology.linkers must be an array");
    }
    std::vector<LinkerType> linkers;
    for (std::size_t k = 0; k < linker_list.size(); ++k) {
        const std::string where = "linkers[" + std::to_string(k) + "]";
        const auto &item = linker_list[k];
        const auto &label = detail::require(item, "label", where);
        if (!label.is_string()) {
            fail(ErrorKind::Schema, where + ".label must be a string");
        }
        linkers.push_back({label.get<std::string>(), detail::require_number(item, "length", where)});
    }
    LinkerCatalog catalog(std::move(linkers));

    const auto &ratio_doc = detail::require(doc, "ratio", "topology");
    if (!ratio_doc.is_object()) {
        fail(ErrorKind::Schema, "topology.ratio must be an object keyed by linker label");
    }
    RatioSpec ratio;
    ratio.counts.assign(catalog.size(), 0);
    std::vector<bool> given(catalog.size(), false);
    for (const auto &[label, count] : ratio_doc.items()) {
        const auto t = catalog.index_of(label);
        if (t == catalog.size()) {
            fail(ErrorKind::Invariant, "ratio names unknown linker '" + label + "'");
        }
        if (!count.is_number_integer()) {
            fail(ErrorKind::Schema, "ratio." + label + " must be an integer");
        }
        ratio.counts[t] = detail::non_negative(count.get<std::int64_t>(), "ratio." + label);
        given[t] = true;
    }
    for (std::size_t t = 0; t < catalog.size(); ++t) {
        if (!given[t]) {
            fail(ErrorKind::Invariant, "ratio is missing linker '" + catalog[t].label + "'");
        }
    }

    Penalties penalties;
    penalties.c_ratio = detail::require_number(doc, "c_ratio", "topology");
    penalties.c_occ = detail::require_number(doc, "c_occ", "topology");

    bool reconstructed = false;
    if (const auto it = doc.find("reconstructed"); it != doc.end()) {
        if (!it->is_boolean()) {
            fail(ErrorKind::Schema, "topology.reconstructed must be a boolean");
        }
        reconstructed = it->get<bool>();
    }

    ProblemInputs inputs{build_graph(n_sites, std::move(edges), alpha), std::move(catalog),
                         std::move(ratio), penalties, reconstructed};
    // Constructing the spec runs the cross-field checks (ratio sum, penalties).
    static_cast<void>(ProblemSpec(inputs));
    return inputs;
}

inline ProblemInputs load_graph_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

inline std::string to_json(const ProblemInputs &inputs) {
    using detail::json;
    json doc;
    doc["n_sites"] = inputs.graph.n_sites();
    doc["alpha"] = inputs.graph.alpha();
    json edges = json::array();
    for (const auto &edge : inputs.graph.edges()) {
        edges.push_back({{"i", edge.i},
                         {"j", edge.j},
                         {"d", edge.distance},
                         {"kind", detail::kind_name(edge.kind)}});
    }
    doc["edges"] = std::move(edges);
    json linkers = json::array();
    for (const auto &linker : inputs.catalog.linkers()) {
        linkers.push_back({{"label", linker.label}, {"length", linker.characteristic_length}});
    }
    doc["linkers"] = std::move(linkers);
    json ratio = json::object();
    for (std::size_t t = 0; t < inputs.catalog.size(); ++t) {
        ratio[inputs.catalog[t].label] = inputs.ratio.counts[t];
    }
    doc["ratio"] = std::move(ratio);
    doc["c_ratio"] = inputs.penalties.c_ratio;
    doc["c_occ"] = inputs.penalties.c_occ;
    doc["reconstructed"] = inputs.reconstructed;
    return doc.dump(2) + "\n";
}

} // namespace mtvq
