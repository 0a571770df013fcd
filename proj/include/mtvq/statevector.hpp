#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace mtvq {

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
inline constexpr std::size_t kMaxSimulatedQubits = 24;

/// Dense n-qubit state. Basis index bit k is qubit k, so index 0b01 has qubit 0
/// set and prints as "10".
class Statevector {
  public:
    using amplitude_type = std::complex<double>;

    explicit Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0 || n_qubits > kMaxSimulatedQubits) {
            fail(ErrorKind::Bound, "simulator supports 1.." + std::to_string(kMaxSimulatedQubits) +
                                       " qubits, requested " + std::to_string(n_qubits));
        }
        amplitudes_.assign(std::size_t{1} << n_qubits, amplitude_type{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const amplitude_type> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<amplitude_type> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] double norm_squared() const {
        double sum = 0.0;
        for (const auto &a : amplitudes_) {
            sum += std::norm(a);
        }
        return sum;
    }

  private:
    std::size_t n_qubits_;
    std::vector<amplitude_type> amplitudes_;
};

inline void check_qubit(const Statevector &state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        fail(ErrorKind::Range, "qubit " + std::to_string(qubit) + " outside a " +
                                   std::to_string(state.n_qubits()) + "-qubit register");
    }
}

/// Ry(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
inline void apply_ry(Statevector &state, std::size_t qubit, double angle) {
    check_qubit(state, qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
        for (std::size_t k = block; k < block + stride; ++k) {
            const auto a0 = amps[k];
            const auto a1 = amps[k + stride];
            amps[k] = c * a0 - s * a1;
            amps[k + stride] = s * a0 + c * a1;
        }
    }
}

inline void apply_cz(Statevector &state, std::size_t q1, std::size_t q2) {
    check_qubit(state, q1);
    check_qubit(state, q2);
    if (q1 == q2) {
        fail(ErrorKind::Range, "CZ needs two distinct qubits");
    }
    const std::size_t both = (std::size_t{1} << q1) | (std::size_t{1} << q2);
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if ((k & both) == both) {
            amps[k] = -amps[k];
        }
    }
}

/// CZ on every neighbouring pair (0,1), (1,2), ..., (n-2,n-1). The gates are
/// diagonal and commute, so the chain is one pass: the sign is the parity of the
/// number of adjacent set-bit pairs in the basis index.
inline void apply_cz_chain(Statevector &state) {
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (std::popcount(k & (k >> 1)) & 1) {
            amps[k] = -amps[k];
        }
    }
}

/// Two-Local circuit with one repetition: Ry on every qubit, CZ along the chain
/// (0,1), (1,2), ..., then a second Ry layer. Needs 2n angles; angle k drives
/// qubit k in the first layer and angle n+k drives it in the second.
inline Statevector two_local_state(std::span<const double> params, std::size_t n_qubits) {
    if (params.size() != 2 * n_qubits) {
        fail(ErrorKind::Invariant, "two-local ansatz on " + std::to_string(n_qubits) +
                                       " qubits needs " + std::to_string(2 * n_qubits) +
                                       " parameters, got " + std::to_string(params.size()));
    }
    Statevector state(n_qubits);
    // The first rotation layer acts on |0...0>, so it yields the product state
    // prod_q (cos(t_q/2) |0> + sin(t_q/2) |1>), built by doubling.
    auto amps = state.amplitudes();
    for (std::size_t q = 0; q < n_qubits; ++q) {
        const double c = std::cos(0.5 * params[q]);
        const double s = std::sin(0.5 * params[q]);
        const std::size_t half = std::size_t{1} << q;
        for (std::size_t k = 0; k < half; ++k) {
            amps[k + half] = s * amps[k];
            amps[k] *= c;
        }
    }
    apply_cz_chain(state);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        apply_ry(state, q, params[n_qubits + q]);
    }
    return state;
}

/// |amplitude|^2 for every basis index.
inline std::vector<double> exact_probabilities(const Statevector &state) {
    std::vector<double> probs;
    probs.reserve(state.dimension());
    for (const auto &a : state.amplitudes()) {
        probs.push_back(std::norm(a));
    }
    return probs;
}

struct Outcome {
    std::uint64_t index = 0;
    std::uint64_t count = 0;

    friend bool operator==(const Outcome &, const Outcome &) = default;
};

/// Shot counts, sorted by basis index; only observed outcomes are listed.
struct Counts {
    std::size_t n_qubits = 0;
    std::uint64_t shots = 0;
    std::vector<Outcome> outcomes;

    friend bool operator==(const Counts &, const Counts &) = default;
};

/// Multinomial draw of `shots` measurements from a probability vector. One
/// uniform is drawn per shot; the sorted uniforms are matched against the
/// running CDF in a single sweep.
inline Counts sample_probabilities(std::span<const double> probs, std::size_t n_qubits,
                                   std::uint64_t shots, RngStream &rng) {
    if (shots == 0) {
        fail(ErrorKind::Range, "sampling needs at least one shot");
    }
    double total = 0.0;
    for (const double p : probs) {
        total += p;
    }
    std::vector<double> draws(shots);
    for (auto &u : draws) {
        u = rng.uniform() * total;
    }
    std::sort(draws.begin(), draws.end());

    Counts counts{n_qubits, shots, {}};
    std::size_t k = 0;
    double upper = probs.empty() ? 0.0 : probs[0];
    std::size_t last_nonzero = 0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        if (probs[j] > 0.0) {
            last_nonzero = j;
        }
    }
    for (const double u : draws) {
        // Advance to the first index whose cumulative mass exceeds u.
        while (u >= upper && k < last_nonzero) {
            ++k;
            upper += probs[k];
        }
        if (counts.outcomes.empty() || counts.outcomes.back().index != k) {
            counts.outcomes.push_back({k, 0});
        }
        ++counts.outcomes.back().count;
    }
    return counts;
}

inline Counts sample(const Statevector &state, std::uint64_t shots, RngStream &rng) {
    const auto probs = exact_probabilities(state);
    return sample_probabilities(probs, state.n_qubits(), shots, rng);
}

inline Counts sample(const Statevector &state, std::uint64_t shots, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return sample(state, shots, rng);
}

/// Text form of a basis index: qubit 0 is the leftmost character.
inline std::string basis_string(std::uint64_t index, std::size_t n_qubits) {
    std::string text(n_qubits, '0');
    for (std::size_t k = 0; k < n_qubits; ++k) {
        if ((index >> k) & 1U) {
            text[k] = '1';
        }
    }
    return text;
}

} // namespace mtvq
