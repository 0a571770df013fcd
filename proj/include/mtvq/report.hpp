#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "exact_solver.hpp"
#include "vqe.hpp"

namespace mtvq {

/// Fixed six-decimal rendering used by every CSV column.
inline std::string fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    std::string text(buffer);
    if (text == "-0.000000") {
        text.erase(0, 1);
    }
    return text;
}

/// Rows `bitstring,hamiltonian,probability`, ordered by Hamiltonian value and
/// then bitstring.
inline std::string distribution_csv(const Distribution &dist, const CostTable &costs) {
    struct Row {
        std::string bits;
        double h;
        double p;
    };
    std::vector<Row> rows;
    rows.reserve(dist.probabilities.size());
    for (const auto &[index, p] : dist.probabilities) {
        rows.push_back({basis_string(index, dist.n_qubits), costs[index], p});
    }
    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
        return a.h != b.h ? a.h < b.h : a.bits < b.bits;
    });
    std::string out = "bitstring,hamiltonian,probability\n";
    for (const auto &row : rows) {
        out += row.bits + "," + fixed6(row.h) + "," + fixed6(row.p) + "\n";
    }
    return out;
}

inline std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "alpha,successes,runs\n";
    for (const auto &row : rows) {
        out += fixed6(row.alpha) + "," + std::to_string(row.successes) + "," +
               std::to_string(row.runs) + "\n";
    }
    return out;
}

/// [{"h": value, "configs": ["0101...", ...]}, ...] in ascending order.
inline std::string spectrum_json(std::span<const SpectrumEntry> entries) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto &entry : entries) {
        nlohmann::ordered_json configs = nlohmann::ordered_json::array();
        for (const auto &config : entry.configurations) {
            configs.push_back(config.to_string());
        }
        doc.push_back({{"h", entry.hamiltonian_value}, {"configs", std::move(configs)}});
    }
    return doc.dump(2) + "\n";
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out.flush()) {
        fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
    }
}

} // namespace mtvq
