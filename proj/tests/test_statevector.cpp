#include "qpartial/statevector.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>

#include "qpartial/reduced.hpp"
#include "test_util.hpp"

using namespace qpartial;
using Cx = std::complex<double>;

namespace {

// class amplitudes after j1 global iterations, from the closed form
struct Step1Amps {
    double target, rest;
};
Step1Amps step1_closed_form(const SearchGeometry& g, std::int64_t j1) {
    const double ang = (2.0 * j1 + 1.0) * g.angles.theta1;
    return {std::sin(ang) / std::sqrt(double(g.target_total())),
            std::cos(ang) / std::sqrt(double(g.N - g.target_total()))};
}

// target-block coefficients after j1 global and j2 local iterations
void step2_closed_form(const SearchGeometry& g, double j1, double j2, double* at,
                       double* antt) {
    const double s1 = std::sin((2.0 * j1 + 1.0) * g.angles.theta1);
    const double c1 = std::cos((2.0 * j1 + 1.0) * g.angles.theta1);
    const double cl = std::cos(2.0 * j2 * g.angles.theta2);
    const double sl = std::sin(2.0 * j2 * g.angles.theta2);
    const double r = std::sqrt(double(g.b - g.tau) / double(g.N - g.target_total()));
    *at = cl * s1 / std::sqrt(double(g.t)) + r * sl * c1;
    *antt = -sl * s1 / std::sqrt(double(g.t)) + r * cl * c1;
}

TEST(Statevector, UniformState) {
    const auto g = validate_geometry(4, 2, 1, 1);
    const auto s = uniform_state(g, canonical_placement(g));
    for (const auto& a : s.amp) EXPECT_EQ(a, Cx(0.5, 0.0));
    EXPECT_NEAR(state_norm(s), 1.0, 1e-15);

    const auto g64 = validate_geometry(64, 4, 1, 1);
    const auto s64 = uniform_state(g64, canonical_placement(g64));
    for (const auto& a : s64.amp) EXPECT_EQ(a, Cx(0.125, 0.0));
}

TEST(Statevector, TargetFlip) {
    const auto g = validate_geometry(4, 2, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    apply_target_flip(s);
    EXPECT_EQ(s.amp[0], Cx(-0.5, 0.0));
    EXPECT_EQ(s.amp[1], Cx(0.5, 0.0));
    EXPECT_EQ(s.oracle_queries, 1u);
    apply_target_flip(s);  // involution
    for (const auto& a : s.amp) EXPECT_EQ(a, Cx(0.5, 0.0));
    EXPECT_EQ(s.oracle_queries, 2u);

    apply_target_phase(s, Cx(1.0, 0.0));  // identity phase
    for (const auto& a : s.amp) EXPECT_EQ(a, Cx(0.5, 0.0));
}

TEST(Statevector, GlobalReflection) {
    const auto g = validate_geometry(4, 2, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    apply_global_reflection(s);
    for (const auto& a : s.amp) EXPECT_NEAR(std::abs(a - Cx(0.5, 0.0)), 0.0, 1e-15);

    s.amp = {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0)};
    apply_global_reflection(s);
    EXPECT_NEAR(std::abs(s.amp[0] - Cx(-0.5, 0)), 0.0, 1e-15);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(s.amp[i] - Cx(0.5, 0)), 0.0, 1e-15);
}

TEST(Statevector, ReflectionPreservesNormAndIsInvolution) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = qptest::random_geometry(rng, 512);
        auto s = qptest::random_full_state(g, rng);
        const auto before = s.amp;
        apply_global_reflection(s);
        EXPECT_NEAR(state_norm(s), 1.0, 1e-12);
        apply_global_reflection(s);
        for (std::size_t i = 0; i < before.size(); ++i)
            EXPECT_NEAR(std::abs(s.amp[i] - before[i]), 0.0, 1e-12);
    }
}

TEST(Statevector, GlobalIterationMatchesClosedForm) {
    const auto g = validate_geometry(64, 4, 2, 4);
    auto s = uniform_state(g, canonical_placement(g));
    for (std::int64_t j1 = 0; j1 <= 10; ++j1) {
        const auto want = step1_closed_form(g, j1);
        for (std::int64_t i = 0; i < g.N; ++i) {
            const bool is_target =
                std::binary_search(s.placement.items.begin(), s.placement.items.end(), i);
            EXPECT_NEAR(std::abs(s.amp[i] - Cx(is_target ? want.target : want.rest, 0)),
                        0.0, 1e-12);
        }
        apply_global_iteration(s);
    }
    EXPECT_EQ(s.oracle_queries, 11u);
}

TEST(Statevector, SingleIterationExactAtQuarterFraction) {
    // sin^2(theta1) = 1/4 makes one iteration land exactly on the target
    const auto g = validate_geometry(4, 2, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    apply_global_iteration(s);
    EXPECT_NEAR(std::abs(s.amp[0]), 1.0, 1e-15);
}

TEST(Statevector, GlobalIterationEigenvector) {
    const auto g = validate_geometry(64, 4, 2, 4);
    auto s = uniform_state(g, canonical_placement(g));
    const double mt = 1.0 / std::sqrt(2.0 * g.target_total());
    const double xt = 1.0 / std::sqrt(2.0 * (g.N - g.target_total()));
    for (std::int64_t i = 0; i < g.N; ++i) {
        const bool is_target =
            std::binary_search(s.placement.items.begin(), s.placement.items.end(), i);
        s.amp[i] = is_target ? Cx(mt, 0) : Cx(0, xt);
    }
    auto evolved = s;
    apply_global_iteration(evolved);
    const Cx lambda = std::exp(Cx(0, 2.0 * g.angles.theta1));
    for (std::int64_t i = 0; i < g.N; ++i)
        EXPECT_NEAR(std::abs(evolved.amp[i] - lambda * s.amp[i]), 0.0, 1e-12);
}

TEST(Statevector, LocalIterationEigenvector) {
    // in-block analogue: (|mu> + i|ntt>)/sqrt(2) inside one target block
    const auto g = validate_geometry(64, 4, 2, 4);
    auto s = uniform_state(g, canonical_placement(g));
    std::fill(s.amp.begin(), s.amp.end(), Cx(0, 0));
    const double mu = 1.0 / std::sqrt(2.0 * g.tau);
    const double nt = 1.0 / std::sqrt(2.0 * (g.b - g.tau));
    for (std::int64_t i = 0; i < g.b; ++i) {
        const bool is_target =
            std::binary_search(s.placement.items.begin(), s.placement.items.end(), i);
        s.amp[i] = is_target ? Cx(mu, 0) : Cx(0, nt);
    }
    auto evolved = s;
    apply_local_iterations(evolved, 1);
    const Cx lambda = std::exp(Cx(0, 2.0 * g.angles.theta2));
    for (std::int64_t i = 0; i < g.N; ++i)
        EXPECT_NEAR(std::abs(evolved.amp[i] - lambda * s.amp[i]), 0.0, 1e-12);
}

TEST(Statevector, LocalIterationsNonTargetBlockInvariant) {
    const auto g = validate_geometry(64, 4, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    for (int i = 0; i < 3; ++i) apply_global_iteration(s);
    const auto before = s.amp;
    apply_local_iterations(s, 5);
    for (std::int64_t i = g.t * g.b; i < g.N; ++i)
        EXPECT_NEAR(std::abs(s.amp[i] - before[i]), 0.0, 1e-12);
}

TEST(Statevector, LocalIterationsMatchClosedForm) {
    const auto g = validate_geometry(64, 4, 1, 1);
    for (std::int64_t j1 = 0; j1 <= 4; ++j1) {
        for (std::int64_t j2 = 0; j2 <= 4; ++j2) {
            auto s = uniform_state(g, canonical_placement(g));
            for (std::int64_t i = 0; i < j1; ++i) apply_global_iteration(s);
            apply_local_iterations(s, j2);
            double at = 0, antt = 0;
            step2_closed_form(g, double(j1), double(j2), &at, &antt);
            const auto p = project_classes(s);
            EXPECT_NEAR(std::abs(p.reduced.m - Cx(at, 0)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(p.reduced.ntt - Cx(antt, 0)), 0.0, 1e-12);
            EXPECT_EQ(s.oracle_queries, static_cast<std::uint64_t>(j1 + j2));
        }
    }
}

TEST(Statevector, ZeroLocalIterationsNoOp) {
    std::mt19937_64 rng(5);
    const auto g = validate_geometry(64, 4, 2, 4);
    auto s = qptest::random_full_state(g, rng);
    const auto before = s.amp;
    apply_local_iterations(s, 0);
    EXPECT_EQ(s.amp, before);
    EXPECT_EQ(s.oracle_queries, 0u);
}

// fractional j2 root of the cancellation equation, evolved in the reduced
// model and lifted to the full register, makes Step 3 wipe out every
// non-target block
TEST(Statevector, Step3AnnihilatesAtCancellationRoot) {
    const auto g = validate_geometry(1024, 4, 1, 1);
    const std::int64_t j1 = 5;
    auto f = [&](double j2) { return cancellation_residual(g, double(j1), j2); };
    const double period = std::numbers::pi / g.angles.theta2;
    double root = -1;
    const int grid = 400;
    for (int i = 0; i < grid && root < 0; ++i) {
        const double a = period * i / grid, b = period * (i + 1) / grid;
        if ((f(a) < 0) != (f(b) < 0)) root = qptest::bisect(f, a, b);
    }
    ASSERT_GT(root, 0.0);

    ReducedState r = initial_reduced(g);
    r = evolve_global(g, r, double(j1));
    r = evolve_local(g, r, root);
    auto s = embed_reduced(g, canonical_placement(g), r);
    apply_step3(s, Step3Ordering::ReflectionThenOracle);
    EXPECT_LE(max_nontarget_amplitude(s), 1e-12);
    EXPECT_NEAR(state_norm(s), 1.0, 1e-12);
}

// on an input with zero target amplitude the two Step-3 orderings give the
// same state except for the sign of the |mu> coefficient
TEST(Statevector, Step3OrderingsDifferOnlyInMuSign) {
    const auto g = validate_geometry(1024, 4, 1, 1);
    const std::int64_t j1 = 3;
    auto at_of = [&](double j2) {
        double at = 0, antt = 0;
        step2_closed_form(g, double(j1), j2, &at, &antt);
        return at;
    };
    const double period = std::numbers::pi / g.angles.theta2;
    double root = -1;
    for (int i = 0; i < 400 && root < 0; ++i) {
        const double a = period * i / 400, b = period * (i + 1) / 400;
        if ((at_of(a) < 0) != (at_of(b) < 0)) root = qptest::bisect(at_of, a, b);
    }
    ASSERT_GT(root, 0.0);

    ReducedState r = initial_reduced(g);
    r = evolve_global(g, r, double(j1));
    r = evolve_local(g, r, root);
    auto sA = embed_reduced(g, canonical_placement(g), r);
    auto sB = sA;
    apply_step3(sA, Step3Ordering::ReflectionThenOracle);
    apply_step3(sB, Step3Ordering::OracleThenReflection);
    const auto pA = project_classes(sA);
    const auto pB = project_classes(sB);
    EXPECT_NEAR(std::abs(pA.reduced.m + pB.reduced.m), 0.0, 1e-12);
    EXPECT_GT(std::abs(pA.reduced.m), 1e-3);  // the component actually flips
    EXPECT_NEAR(std::abs(pA.reduced.ntt - pB.reduced.ntt), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(pA.reduced.u - pB.reduced.u), 0.0, 1e-12);
}

TEST(Statevector, Step3OnUniformKeepsNormAndCountsOneQuery) {
    const auto g = validate_geometry(64, 4, 2, 4);
    for (const auto ord :
         {Step3Ordering::ReflectionThenOracle, Step3Ordering::OracleThenReflection}) {
        auto s = uniform_state(g, canonical_placement(g));
        apply_step3(s, ord);
        EXPECT_NEAR(state_norm(s), 1.0, 1e-12);
        EXPECT_EQ(s.oracle_queries, 1u);
    }
}

TEST(Statevector, BlockMarginals) {
    const auto g = validate_geometry(64, 4, 2, 4);
    auto s = uniform_state(g, canonical_placement(g));
    auto p = block_marginals(s);
    for (const auto v : p) EXPECT_NEAR(v, 0.25, 1e-15);

    for (int i = 0; i < 2; ++i) apply_global_iteration(s);
    p = block_marginals(s);
    EXPECT_NEAR(p[0], p[1], 1e-13);  // symmetric target blocks
    double sum = 0;
    for (const auto v : p) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Statevector, MarginalsIgnorePlacementUpToBlockPermutation) {
    const auto g = validate_geometry(256, 8, 2, 3);
    std::mt19937_64 rng(99);
    std::vector<double> reference;
    for (int trial = 0; trial < 6; ++trial) {
        auto s = uniform_state(g, random_placement(g, rng()));
        for (int i = 0; i < 3; ++i) apply_global_iteration(s);
        apply_local_iterations(s, 2);
        apply_step3(s, Step3Ordering::ReflectionThenOracle);
        auto p = block_marginals(s);
        std::sort(p.begin(), p.end());
        if (reference.empty()) {
            reference = p;
        } else {
            for (std::size_t i = 0; i < p.size(); ++i)
                EXPECT_NEAR(p[i], reference[i], 1e-12);
        }
    }
}

TEST(Statevector, SampleBlockDeterministicAndUnbiased) {
    const auto g = validate_geometry(64, 4, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    for (int i = 0; i < 2; ++i) apply_global_iteration(s);

    EXPECT_EQ(sample_block(s, 1234), sample_block(s, 1234));

    const auto p = block_marginals(s);
    std::vector<int> counts(g.K, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[sample_block(s, 1000000u + i)];
    for (std::int64_t k = 0; k < g.K; ++k) {
        const double sigma = std::sqrt(draws * p[k] * (1.0 - p[k]));
        EXPECT_NEAR(counts[k], draws * p[k], 3.0 * sigma + 1.0);
    }
}

TEST(Statevector, ClassSymmetryUnderOperatorSequences) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = qptest::random_geometry(rng, 1024);
        auto s = uniform_state(g, random_placement(g, rng()));
        for (int step = 0; step < 8; ++step) {
            switch (rng() % 4) {
                case 0: apply_global_iteration(s); break;
                case 1: apply_local_iterations(s, 1); break;
                case 2: apply_step3(s, Step3Ordering::ReflectionThenOracle); break;
                default: apply_step3(s, Step3Ordering::OracleThenReflection); break;
            }
        }
        EXPECT_LE(project_classes(s).symmetry_residual, 1e-12);
        EXPECT_NEAR(state_norm(s), 1.0, 1e-12);
    }
}

TEST(Statevector, EmbedProjectRoundTrip) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = qptest::random_geometry(rng, 1024);
        const auto r = qptest::random_reduced(rng);
        const auto s = embed_reduced(g, canonical_placement(g), r);
        const auto p = project_classes(s);
        EXPECT_LE(qptest::max_component_delta(p.reduced, r), 1e-13);
        EXPECT_LE(p.symmetry_residual, 1e-13);
    }
}

TEST(Statevector, AmplitudesJsonDump) {
    const auto g = validate_geometry(4, 2, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    apply_target_flip(s);
    EXPECT_EQ(amplitudes_json(s), "[[-0.5,0],[0.5,0],[0.5,0],[0.5,0]]");
}

TEST(Statevector, FullEngineCap) {
    const auto big = validate_geometry(std::int64_t{1} << 21, 2, 1, 1);
    EXPECT_THROW(uniform_state(big, canonical_placement(big)), TooLargeError);

    ::setenv("QPARTIAL_MAX_FULL_N", "32", 1);
    const auto g = validate_geometry(64, 4, 1, 1);
    EXPECT_THROW(uniform_state(g, canonical_placement(g)), TooLargeError);
    ::unsetenv("QPARTIAL_MAX_FULL_N");
    EXPECT_NO_THROW(uniform_state(g, canonical_placement(g)));
}

TEST(Statevector, RandomPlacementShape) {
    const auto g = validate_geometry(256, 8, 3, 2);
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const auto p = random_placement(g, seed);
        EXPECT_EQ(p.blocks.size(), 3u);
        EXPECT_EQ(p.items.size(), 6u);
        for (const auto idx : p.items) {
            EXPECT_GE(idx, 0);
            EXPECT_LT(idx, g.N);
            EXPECT_TRUE(std::binary_search(p.blocks.begin(), p.blocks.end(), idx / g.b));
        }
        EXPECT_TRUE(std::is_sorted(p.items.begin(), p.items.end()));
        EXPECT_TRUE(std::adjacent_find(p.items.begin(), p.items.end()) == p.items.end());
    }
}

}  // namespace
