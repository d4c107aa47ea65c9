#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "junta/sampling.hpp"

using namespace junta;

namespace {

Unitary hadamard() {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return Unitary(1, h / std::sqrt(2.0));
}

Unitary pauli_unitary(const CMatrix& m) { return Unitary(1, m); }

double tv_distance(const std::vector<double>& counts, const std::vector<double>& probs,
                   double draws) {
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i)
        acc += std::abs(counts[i] / draws - probs[i]);
    return 0.5 * acc;
}

}  // namespace

TEST_CASE("choi state inner products reproduce the spectrum") {
    // The measurement basis of the sampling subroutine satisfies
    // <v(sigma_x)|v(U)> = Uhat(x), so the distribution-level simulation and
    // the explicit Choi state agree outcome by outcome.
    RandomSource rng(41);
    for (int n = 1; n <= 2; ++n) {
        Unitary u = haar_random_unitary(Eigen::Index(1) << n, rng);
        PauliSpectrum spec = pauli_spectrum(u);
        const CVector vu = choi_state(u);
        for (std::size_t e = 0; e < spec.size(); ++e) {
            PauliString p = PauliString::decode(n, e);
            const CVector vs = choi_state(Unitary(n, pauli_matrix(p)));
            const Complex overlap = vs.dot(vu);  // conjugates the left argument
            CHECK(std::abs(overlap - spec.coefficient(e)) < 1e-12);
        }
    }
}

TEST_CASE("fourier sampling of the identity is a point mass") {
    RandomSource rng(42);
    QueryLedger ledger;
    FourierSampler sampler(Unitary(2, CMatrix::Identity(4, 4)), rng, ledger);
    for (int i = 0; i < 200; ++i) CHECK(sampler.draw_encoded() == 0);
    CHECK(ledger.fourier_sample_calls == 200);
}

TEST_CASE("fourier sampling frequencies of the hadamard gate") {
    RandomSource rng(43);
    QueryLedger ledger;
    FourierSampler sampler(hadamard(), rng, ledger);
    std::array<std::int64_t, 4> counts{};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) counts[sampler.draw_encoded()] += 1;
    CHECK(counts[0] == 0);
    CHECK(counts[2] == 0);
    CHECK(static_cast<double>(counts[1]) / draws == Catch::Approx(0.5).margin(0.01));
    CHECK(static_cast<double>(counts[3]) / draws == Catch::Approx(0.5).margin(0.01));
    CHECK(ledger.fourier_sample_calls == draws);
}

TEST_CASE("fourier sampling matches the spectrum in total variation") {
    RandomSource rng(44);
    QueryLedger ledger;
    Unitary u = haar_random_unitary(16, rng);
    FourierSampler sampler(u, rng, ledger);
    const PauliSpectrum& spec = sampler.spectrum();
    std::vector<double> counts(spec.size(), 0.0);
    std::vector<double> probs(spec.size());
    for (std::size_t e = 0; e < spec.size(); ++e) probs[e] = spec.weight_at(e);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) counts[sampler.draw_encoded()] += 1;
    CHECK(tv_distance(counts, probs, draws) <= 0.02);
}

TEST_CASE("influence sampling of the identity returns the zero string") {
    RandomSource rng(45);
    QueryLedger ledger;
    InfluenceSampler sampler(Unitary(2, CMatrix::Identity(4, 4)), rng, ledger);
    for (int i = 0; i < 100; ++i) CHECK(sampler.draw() == 0u);
    CHECK(ledger.influence_sample_calls == 100);
}

TEST_CASE("exact influence-sample law of single paulis") {
    // Branch enumeration: V=I keeps Z diagonal (x=0), V=H maps Z to X and
    // V=R maps Z to Y (both flip), so Pr[x=1] = 2/3; symmetric for X.
    const std::vector<double> law_z =
        influence_sample_exact_distribution(pauli_unitary(pauli_z()));
    CHECK(law_z[0] == Catch::Approx(1.0 / 3).margin(1e-12));
    CHECK(law_z[1] == Catch::Approx(2.0 / 3).margin(1e-12));

    const std::vector<double> law_x =
        influence_sample_exact_distribution(pauli_unitary(pauli_x()));
    CHECK(law_x[1] == Catch::Approx(2.0 / 3).margin(1e-12));

    const std::vector<double> law_id =
        influence_sample_exact_distribution(Unitary(1, CMatrix::Identity(2, 2)));
    CHECK(law_id[0] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("exact law sums to one and matches empirical frequencies") {
    RandomSource rng(46);
    Unitary u = haar_random_unitary(4, rng);
    const std::vector<double> law = influence_sample_exact_distribution(u);
    double total = 0;
    for (double p : law) total += p;
    CHECK(total == Catch::Approx(1.0).margin(1e-9));

    QueryLedger ledger;
    InfluenceSampler sampler(u, rng, ledger);
    std::vector<double> counts(law.size(), 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) counts[sampler.draw()] += 1;
    CHECK(tv_distance(counts, law, draws) <= 0.02);
    CHECK(ledger.influence_sample_calls == draws);
}

TEST_CASE("influence sampler empirical law at three qubits") {
    RandomSource rng(47);
    Unitary u = haar_random_unitary(8, rng);
    const std::vector<double> law = influence_sample_exact_distribution(u);

    QueryLedger ledger;
    InfluenceSampler sampler(u, rng, ledger);
    std::vector<double> counts(law.size(), 0.0);
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) counts[sampler.draw()] += 1;
    CHECK(tv_distance(counts, law, draws) <= 0.02);
}

TEST_CASE("influence sandwich for random unitaries") {
    RandomSource rng(48);
    for (int n = 1; n <= 3; ++n) {
        Unitary u = haar_random_unitary(Eigen::Index(1) << n, rng);
        PauliSpectrum spec = pauli_spectrum(u);
        const std::vector<double> law = influence_sample_exact_distribution(u, true);
        const std::vector<double> law_no_r = influence_sample_exact_distribution(u, false);
        for (Subset t = 0; t <= full_set(n); ++t) {
            const double inf = influence_set(spec, t);
            const double hit = support_hit_probability(law, n, t);
            CHECK(hit <= inf + 1e-9);
            CHECK(inf <= 1.5 * hit + 1e-9);
            const double hit2 = support_hit_probability(law_no_r, n, t);
            CHECK(hit2 <= inf + 1e-9);
            CHECK(inf <= 2.0 * hit2 + 1e-9);
        }
    }
}

TEST_CASE("hadamard test shot count formula") {
    // ceil(2 ln(4/delta) / (tau/sqrt 2)^2) at (0.1, 0.01).
    const std::int64_t m = hadamard_test_shots(0.1, 0.01);
    const double per_quadrature = 0.1 / std::sqrt(2.0);
    CHECK(m == static_cast<std::int64_t>(
                   std::ceil(2.0 * std::log(400.0) / (per_quadrature * per_quadrature))));
    CHECK_THROWS_AS(hadamard_test_shots(0.0, 0.5), ArgumentError);
    CHECK_THROWS_AS(hadamard_test_shots(0.5, 1.5), ArgumentError);
}

TEST_CASE("hadamard test estimates diagonal and off-diagonal amplitudes") {
    RandomSource rng(49);
    QueryLedger ledger;
    Unitary id(2, CMatrix::Identity(4, 4));
    int hits_diag = 0, hits_off = 0;
    const int runs = 1000;
    const double tau = 0.05, delta = 0.01;
    for (int i = 0; i < runs; ++i) {
        const Complex est = hadamard_test_estimate(id, 1, 1, tau, delta, rng, ledger);
        if (std::abs(est - Complex(1, 0)) <= tau) ++hits_diag;
        const Complex off = hadamard_test_estimate(id, 0, 1, tau, delta, rng, ledger);
        if (std::abs(off) <= tau) ++hits_off;
    }
    CHECK(hits_diag >= 990);
    CHECK(hits_off >= 990);
    CHECK(ledger.controlled_u_applications ==
          2 * runs * 2 * hadamard_test_shots(tau, delta));
}

TEST_CASE("hadamard test tracks a generic amplitude") {
    RandomSource rng(50);
    QueryLedger ledger;
    Unitary u = haar_random_unitary(8, rng);
    const Complex truth = u.matrix()(3, 5);
    int hits = 0;
    for (int i = 0; i < 200; ++i) {
        const Complex est = hadamard_test_estimate(u, 3, 5, 0.08, 0.02, rng, ledger);
        if (std::abs(est - truth) <= 0.08) ++hits;
    }
    CHECK(hits >= 190);
    CHECK_THROWS_AS(hadamard_test_estimate(u, 9, 0, 0.1, 0.1, rng, ledger), ArgumentError);
}
