#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "support.hpp"

using namespace mtvq;
using mtvq::testing::ring_spec;

namespace {

bool is_alternating_on_hexagon(const Configuration &c) {
    // Sites 0..5 in ring order; neighbours must differ.
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t j = (i + 1) % 6;
        if (c.bit(2 * i) == c.bit(2 * j)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(GroundState, MufIsZeroAndBipartite) {
    const auto ground = ground_state(ProblemSpec(preset("muf-7")));
    EXPECT_NEAR(ground.hamiltonian_value, 0.0, 1e-9);
    ASSERT_EQ(ground.configurations.size(), 2u);
    for (const auto &c : ground.configurations) {
        EXPECT_TRUE(is_alternating_on_hexagon(c)) << c.to_string();
    }
}

TEST(GroundState, CuIsAlternatingAcrossTopologicalBonds) {
    const ProblemSpec spec(preset("cu-thq-hhtp"));
    const auto ground = ground_state(spec);
    ASSERT_FALSE(ground.configurations.empty());
    for (const auto &c : ground.configurations) {
        EXPECT_TRUE(satisfies_constraints(c, spec));
        for (const auto &edge : spec.graph().edges()) {
            if (edge.kind == EdgeKind::Topological) {
                EXPECT_NE(c.bit(2 * edge.i), c.bit(2 * edge.j)) << c.to_string();
            }
        }
    }
    EXPECT_EQ(ground.configurations.front().to_string(), "0110011001100110");
}

TEST(GroundState, SatisfiesConstraintsForEveryPreset) {
    for (const auto name : kPresetNames) {
        const ProblemSpec spec(preset(name));
        for (const auto &c : ground_state(spec).configurations) {
            EXPECT_TRUE(satisfies_constraints(c, spec)) << name;
        }
    }
}

TEST(GroundState, UnitPenaltiesWithFlatBalanceSelectAllValid) {
    const auto spec = mtvq::testing::uniform_length_spec(4, {2, 2}, Penalties{1.0, 1.0});
    const auto ground = ground_state(spec);
    std::set<std::uint64_t> expected;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        if (satisfies_constraints(Configuration(mask, 8), spec)) {
            expected.insert(mask);
        }
    }
    std::set<std::uint64_t> found;
    for (const auto &c : ground.configurations) {
        found.insert(c.mask());
    }
    EXPECT_NEAR(ground.hamiltonian_value, 0.0, 1e-12);
    EXPECT_EQ(found, expected);
    EXPECT_EQ(found.size(), 6u);
}

TEST(GroundState, MinimizersInvariantUnderHamiltonianScaling) {
    auto inputs = preset("sioc-cof2");
    const auto base = ground_state(ProblemSpec(inputs));
    // Scaling every length by s scales the balance term by s^2; scaling the
    // penalties by the same factor scales H uniformly.
    const double s = 1.7;
    std::vector<LinkerType> linkers = inputs.catalog.linkers();
    for (auto &l : linkers) {
        l.characteristic_length *= s;
    }
    inputs.catalog = LinkerCatalog(linkers);
    inputs.penalties = {200.0 * s * s, 300.0 * s * s};
    const auto scaled = ground_state(ProblemSpec(inputs));
    EXPECT_EQ(scaled.configurations, base.configurations);
    EXPECT_NEAR(scaled.hamiltonian_value, s * s * base.hamiltonian_value, 1e-7);
}

TEST(GroundState, SixteenQubitPresetIsFast) {
    const auto start = std::chrono::steady_clock::now();
    ground_state(ProblemSpec(preset("py-mv-dba-cof")));
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(elapsed.count(), 5.0);
}

TEST(GroundState, BoundExceeded) {
    EnumerationOptions options;
    options.max_bits = 10;
    try {
        ground_state(ProblemSpec(preset("muf-7")), options);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Bound);
    }
}

TEST(Spectrum, FirstEntryIsGroundState) {
    const ProblemSpec spec(preset("sioc-cof2"));
    const auto one = spectrum(spec, 1);
    ASSERT_EQ(one.size(), 1u);
    const auto ground = ground_state(spec);
    EXPECT_EQ(one[0].hamiltonian_value, ground.hamiltonian_value);
    EXPECT_EQ(one[0].configurations, ground.configurations);
}

TEST(Spectrum, StrictlyIncreasingAndSorted) {
    for (const auto name : kPresetNames) {
        const auto entries = spectrum(ProblemSpec(preset(name)), 6);
        ASSERT_EQ(entries.size(), 6u) << name;
        for (std::size_t k = 1; k < entries.size(); ++k) {
            EXPECT_GT(entries[k].hamiltonian_value, entries[k - 1].hamiltonian_value + 1e-9);
        }
        for (const auto &entry : entries) {
            EXPECT_TRUE(std::is_sorted(entry.configurations.begin(), entry.configurations.end()));
        }
    }
}

TEST(Spectrum, MatchesBruteForce) {
    const auto spec = ring_spec(4);
    std::vector<double> values;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        values.push_back(total_cost(Configuration(mask, 8), spec));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                 values.end());
    const auto entries = spectrum(spec, 5);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        EXPECT_NEAR(entries[k].hamiltonian_value, values[k], 1e-9);
    }
}

TEST(Spectrum, ThreadCountDoesNotChangeResult) {
    const ProblemSpec spec(preset("cu-thq-hhtp"));
    EnumerationOptions serial;
    EnumerationOptions parallel;
    parallel.threads = 4;
    const auto a = spectrum(spec, 4, serial);
    const auto b = spectrum(spec, 4, parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].hamiltonian_value, b[k].hamiltonian_value);
        EXPECT_EQ(a[k].configurations, b[k].configurations);
    }
}

TEST(Spectrum, ZeroLevelsIsRangeError) {
    try {
        spectrum(ProblemSpec(preset("muf-7")), 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Range);
    }
}

TEST(ReferenceMinima, PairwiseLengthWithRoundedWeights) {
    CostOptions options;
    options.length_form = LengthForm::PairwiseSum;
    options.weight_decimals = 2;
    const std::pair<const char *, double> expected[] = {
        {"cu-thq-hhtp", 293.88}, {"py-mv-dba-cof", 350.89}, {"muf-7", 0.0}, {"sioc-cof2", 188.79}};
    for (const auto &[name, value] : expected) {
        EXPECT_NEAR(ground_state(ProblemSpec(preset(name), options)).hamiltonian_value, value,
                    0.005)
            << name;
    }
}

TEST(EnumerateValid, Counts) {
    EXPECT_EQ(std::ranges::distance(enumerate_valid(ProblemSpec(preset("cu-thq-hhtp")))), 70);
    EXPECT_EQ(std::ranges::distance(enumerate_valid(ring_spec(2))), 2);
    EXPECT_EQ(std::ranges::distance(enumerate_valid(ProblemSpec(preset("muf-7")))), 20);
}

TEST(EnumerateValid, AllSatisfyConstraintsAndAreDistinct) {
    const ProblemSpec spec(preset("cu-thq-hhtp"));
    std::set<std::uint64_t> seen;
    for (const auto &c : enumerate_valid(spec)) {
        EXPECT_TRUE(satisfies_constraints(c, spec));
        seen.insert(c.mask());
    }
    EXPECT_EQ(seen.size(), 70u);
}

TEST(CountConfigs, Examples) {
    EXPECT_EQ(count_configs(8, {4, 4}), 70);
    EXPECT_EQ(count_configs(2, {2}), 1);
    EXPECT_EQ(count_configs(12, {3, 3, 3, 3}), 369600);
    EXPECT_THROW(count_configs(8, {4, 3}), Error);
}

TEST(CountConfigs, MatchesEnumeration) {
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t types = 1; types <= 3 && n * types <= 24; ++types) {
            std::vector<std::size_t> ratio(types, n / types);
            ratio.back() += n - (n / types) * types;
            const auto spec = mtvq::testing::uniform_length_spec(n, ratio);
            const auto listed = std::ranges::distance(enumerate_valid(spec));
            EXPECT_EQ(count_configs(n, ratio), listed) << n << " sites, " << types << " types";
        }
    }
}
