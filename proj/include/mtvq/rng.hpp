#pragma once

#include <cstdint>
#include <random>

namespace mtvq {

/// Per-run random stream. The engine is std::mt19937_64 seeded through
/// std::seed_seq with the 32-bit halves of (master_seed, stream_index); both
/// algorithms are fixed by the standard, so streams are identical across
/// platforms. Uniform draws use the top 53 bits directly rather than
/// std::uniform_real_distribution, whose output is implementation-defined.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                          static_cast<std::uint32_t>(master_seed >> 32),
                          static_cast<std::uint32_t>(stream_index),
                          static_cast<std::uint32_t>(stream_index >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// +1 or -1 with equal probability.
    double rademacher() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

  private:
    std::mt19937_64 engine_;
};

} // namespace mtvq
