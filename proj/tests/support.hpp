#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <mtvq/mtvq.hpp>

namespace mtvq::testing {

/// Two-type problem on a ring with alternating topological and spatial edges.
inline ProblemInputs ring_inputs(std::size_t n_sites, double alpha = 0.5) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n_sites; ++i) {
        const std::size_t j = (i + 1) % n_sites;
        if (n_sites == 2 && i == 1) {
            break;
        }
        edges.push_back({i, j, 2.0 + 0.5 * static_cast<double>(i),
                         i % 2 == 0 ? EdgeKind::Topological : EdgeKind::Spatial});
    }
    const std::size_t half = n_sites / 2;
    return {build_graph(n_sites, std::move(edges), alpha),
            LinkerCatalog({{"S", 2.0}, {"L", 5.0}}),
            RatioSpec{{half, n_sites - half}},
            Penalties{},
            false};
}

inline ProblemSpec ring_spec(std::size_t n_sites, double alpha = 0.5) {
    return ProblemSpec(ring_inputs(n_sites, alpha));
}

/// Path graph over n sites with every linker the same length, so the
/// balance term vanishes on every valid configuration.
inline ProblemSpec uniform_length_spec(std::size_t n_sites, std::vector<std::size_t> ratio,
                                       Penalties penalties = {}) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n_sites; ++i) {
        edges.push_back({i, i + 1, 2.0, EdgeKind::Topological});
    }
    std::vector<LinkerType> linkers;
    for (std::size_t t = 0; t < ratio.size(); ++t) {
        linkers.push_back({"T" + std::to_string(t), 3.0});
    }
    return ProblemSpec(ProblemInputs{build_graph(n_sites, std::move(edges), 0.5),
                                     LinkerCatalog(std::move(linkers)), RatioSpec{std::move(ratio)},
                                     penalties, false});
}

using Matrix = std::vector<std::vector<std::complex<double>>>;

inline Matrix identity(std::size_t dim) {
    Matrix m(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t k = 0; k < dim; ++k) {
        m[k][k] = 1.0;
    }
    return m;
}

inline Matrix multiply(const Matrix &a, const Matrix &b) {
    const std::size_t dim = a.size();
    Matrix out(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t c = 0; c < dim; ++c) {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    return out;
}

/// Kronecker product built gate by gate: the full 2^n matrix of a one-qubit
/// gate acting on `qubit`, with qubit k as bit k of the basis index.
inline Matrix single_qubit_matrix(const std::complex<double> (&g)[2][2], std::size_t qubit,
                                  std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix m(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~(std::size_t{1} << qubit)) != (c & ~(std::size_t{1} << qubit))) {
                continue;
            }
            m[r][c] = g[(r >> qubit) & 1U][(c >> qubit) & 1U];
        }
    }
    return m;
}

inline Matrix ry_matrix(double theta, std::size_t qubit, std::size_t n) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::complex<double> g[2][2] = {{c, -s}, {s, c}};
    return single_qubit_matrix(g, qubit, n);
}

inline Matrix cz_matrix(std::size_t q1, std::size_t q2, std::size_t n) {
    Matrix m = identity(std::size_t{1} << n);
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (((k >> q1) & 1U) && ((k >> q2) & 1U)) {
            m[k][k] = -1.0;
        }
    }
    return m;
}

/// Dense reference for the two-local circuit: Ry layer, CZ(k, k+1) chain,
/// Ry layer, applied to |0...0>.
inline std::vector<std::complex<double>> dense_two_local(const std::vector<double> &params,
                                                         std::size_t n) {
    Matrix u = identity(std::size_t{1} << n);
    const auto apply = [&](const Matrix &gate) { u = multiply(gate, u); };
    for (std::size_t q = 0; q < n; ++q) {
        apply(ry_matrix(params[q], q, n));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
        apply(cz_matrix(q, q + 1, n));
    }
    for (std::size_t q = 0; q < n; ++q) {
        apply(ry_matrix(params[n + q], q, n));
    }
    std::vector<std::complex<double>> column(u.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        column[r] = u[r][0];
    }
    return column;
}

} // namespace mtvq::testing
