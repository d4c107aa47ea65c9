#include <catch2/catch_amalgamated.hpp>

#include "junta/generators.hpp"

using namespace junta;

TEST_CASE("random junta unitaries are exact juntas") {
    RandomSource rng(81);
    for (int trial = 0; trial < 5; ++trial) {
        JuntaUnitaryInstance inst = random_k_junta_unitary(5, 2, rng);
        CHECK(set_size(inst.acting_on) == 2);
        CHECK(dist_to_junta_on(inst.u, inst.acting_on) == Catch::Approx(0.0).margin(1e-9));
        const auto profile = exact_influence_profile(inst.u, 2);
        for (int i = 1; i <= 5; ++i)
            if (!contains(inst.acting_on, i))
                CHECK(profile[i - 1].influence == Catch::Approx(0.0).margin(1e-12));
    }
    // k = n degenerates to a plain Haar unitary.
    JuntaUnitaryInstance full = random_k_junta_unitary(3, 3, rng);
    CHECK(full.acting_on == full_set(3));
    CHECK(unitarity_defect(full.u.matrix()) <= kUnitarityTol);
}

TEST_CASE("perturbed junta unitaries land in the target distance band") {
    for (std::uint64_t seed : {101ull, 102ull, 103ull}) {
        RandomSource rng(seed);
        const double target = 0.3;
        JuntaUnitaryInstance inst = perturbed_junta_unitary(4, 1, target, rng);
        CHECK(inst.distance <= target + 1e-12);
        CHECK(inst.distance >= target / 2 - 1e-12);
        // Re-certify through the oracle.
        const double exact = dist_to_k_junta(inst.u, 1).distance;
        CHECK(exact == Catch::Approx(inst.distance).margin(1e-12));
    }
}

TEST_CASE("far instances certify at the requested distance") {
    RandomSource rng(82);
    JuntaUnitaryInstance far_u = far_unitary_instance(4, 1, 0.6, rng);
    CHECK(far_u.distance >= 0.6);
    CHECK(dist_to_k_junta(far_u.u, 1).distance == Catch::Approx(far_u.distance).margin(1e-12));

    JuntaBooleanInstance far_f = far_boolean_instance(8, 1, 0.4, rng);
    CHECK(far_f.distance >= 0.4);

    // Boolean junta distance never exceeds 1/2, so 0.9-far draws must fail.
    CHECK_THROWS_AS(far_boolean_instance(6, 1, 0.9, rng), GenerationError);
    CHECK_THROWS_AS(far_unitary_instance(2, 1, 0.999, rng), GenerationError);
}

TEST_CASE("perturbed boolean instances flip the advertised fraction") {
    RandomSource rng(83);
    JuntaBooleanInstance inst = perturbed_junta_boolean(8, 2, 0.05, rng);
    CHECK(inst.distance <= 0.05);
    CHECK(dist_to_k_junta_bool(inst.f, 2).distance == Catch::Approx(inst.distance));
}

TEST_CASE("banded hamming-weight functions") {
    const int a = 6;
    const double c1 = 0.1 * std::sqrt(6.0);
    const BooleanFunction h_plus_0 = appendix_h(a, c1, BandSign::Plus, 0);
    for (std::size_t x = 0; x < h_plus_0.size(); ++x) CHECK(h_plus_0.value(x) == 1);

    const BooleanFunction h_plus_1 = appendix_h(a, c1, BandSign::Plus, 1);
    const BooleanFunction h_minus_0 = appendix_h(a, c1, BandSign::Minus, 0);
    const BooleanFunction h_minus_1 = appendix_h(a, c1, BandSign::Minus, 1);
    for (std::size_t x = 0; x < h_plus_1.size(); ++x) {
        const int w = __builtin_popcountll(x);
        const bool in_band = w >= a / 2.0 - c1 && w <= a / 2.0 + c1;
        CHECK(h_plus_1.value(x) == (in_band ? 1 : -1));
        // The two minus-side bands never overlap.
        CHECK(!(h_minus_0.value(x) == -1 && h_minus_1.value(x) == -1));
    }
    CHECK_THROWS_AS(appendix_h(a, 0.9 * std::sqrt(6.0), BandSign::Plus, 0), ArgumentError);
}

TEST_CASE("adversarial yes draws are near juntas") {
    const int k = 4, a = 4;
    const double c1 = 0.005 * std::sqrt(4.0);
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        RandomSource rng(seed);
        AdversarialSample sample = sample_dyes_dno(k, a, c1, rng, true);
        CHECK(sample.f.n() == k + a);
        const double bound = 2.0 * c1 / std::sqrt(static_cast<double>(a));
        CHECK(dist_to_k_junta_bool(sample.f, k).distance <= bound + 1e-12);
    }
}

TEST_CASE("constant control collapses a yes draw to a junta on the action set") {
    const int k = 2, a = 3;
    const double c1 = 0.005 * std::sqrt(2.0);
    RandomSource rng(84);
    for (int attempt = 0; attempt < 200; ++attempt) {
        AdversarialSample sample = sample_dyes_dno(k, a, c1, rng, true);
        const bool constant = std::all_of(sample.control.begin(), sample.control.end(),
                                          [&](std::uint8_t v) { return v == sample.control[0]; });
        if (!constant) continue;
        CHECK(dist_to_junta_on_bool(sample.f, sample.action_set).distance ==
              Catch::Approx(0.0).margin(1e-12));
        return;
    }
    FAIL("no constant-control draw in 200 attempts");
}

TEST_CASE("adversarial no draws depend on both halves") {
    const int k = 3, a = 3;
    const double c1 = 0.005 * std::sqrt(3.0);
    RandomSource rng(85);
    AdversarialSample sample = sample_dyes_dno(k, a, c1, rng, false);
    CHECK(sample.f.n() == 6);
    // Distance reported, not asserted: the far guarantee is asymptotic.
    const double d = dist_to_k_junta_bool(sample.f, k).distance;
    CHECK(d >= 0.0);
}
