#include <catch2/catch_amalgamated.hpp>

#include "junta/linalg.hpp"

using namespace junta;

namespace {

CMatrix random_matrix(Eigen::Index dim, RandomSource& rng) {
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

CMatrix swap_gate() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return m;
}

}  // namespace

TEST_CASE("tensor product identity and sign patterns") {
    CHECK(max_abs_diff(tensor_product(pauli_i(), pauli_i()), CMatrix::Identity(4, 4)) == 0.0);

    CMatrix zz = tensor_product(pauli_z(), pauli_z());
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = 1;
    expect(1, 1) = -1;
    expect(2, 2) = -1;
    expect(3, 3) = 1;
    CHECK(max_abs_diff(zz, expect) == 0.0);
}

TEST_CASE("tensor product multiplies blockwise") {
    // Oracle: (A (x) B)(A (x) B) computed by direct 4x4 multiplication must
    // equal A^2 (x) B^2.
    CMatrix xx = tensor_product(pauli_x(), pauli_x());
    CHECK(max_abs_diff(xx * xx, CMatrix::Identity(4, 4)) < 1e-15);

    RandomSource rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = random_matrix(2, rng);
        CMatrix b = random_matrix(2, rng);
        CMatrix lhs = tensor_product(a, b) * tensor_product(a, b);
        CMatrix rhs = tensor_product(CMatrix(a * a), CMatrix(b * b));
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("tensor product trace is multiplicative") {
    RandomSource rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = random_matrix(2, rng);
        CMatrix b = random_matrix(2, rng);
        const Complex lhs = tensor_product(a, b).trace();
        const Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("tensor product capacity limit") {
    CMatrix big = CMatrix::Identity(1 << 11, 1 << 11);
    CHECK_THROWS_AS(tensor_product(big, CMatrix::Identity(4, 4)), CapacityError);
}

TEST_CASE("partial trace on identity and swap") {
    Unitary id2(2, CMatrix::Identity(4, 4));
    CHECK(max_abs_diff(partial_trace(id2, subset_of({1})), 2.0 * CMatrix::Identity(2, 2)) ==
          0.0);

    // Oracle: SWAP = (II + XX + YY + ZZ)/2; tracing out qubit 2 kills every
    // term except II, leaving I_2.
    CMatrix swap_from_paulis =
        0.5 * (tensor_product(pauli_i(), pauli_i()) + tensor_product(pauli_x(), pauli_x()) +
               tensor_product(pauli_y(), pauli_y()) + tensor_product(pauli_z(), pauli_z()));
    CHECK(max_abs_diff(swap_from_paulis, swap_gate()) < 1e-15);
    Unitary swap(2, swap_gate());
    CHECK(max_abs_diff(partial_trace(swap, subset_of({1})), CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("partial trace of a dictator embedding") {
    // f(x) = x1 on two variables embeds as diag(1,1,-1,-1); summing over the
    // second qubit's basis states gives 2 sigma_z.
    CMatrix diag = CMatrix::Zero(4, 4);
    diag(0, 0) = 1;
    diag(1, 1) = 1;
    diag(2, 2) = -1;
    diag(3, 3) = -1;
    Unitary uf(2, diag);
    CHECK(max_abs_diff(partial_trace(uf, subset_of({1})), 2.0 * pauli_z()) == 0.0);
}

TEST_CASE("partial trace degenerate and error cases") {
    Unitary swap(2, swap_gate());
    CMatrix t = partial_trace(swap, 0u);
    REQUIRE(t.rows() == 1);
    CHECK(std::abs(t(0, 0) - swap_gate().trace()) == 0.0);
    CHECK_THROWS_AS(partial_trace(swap, subset_of({3})), ArgumentError);
}

TEST_CASE("partial trace of junta-structured inputs rescales the core") {
    RandomSource rng(13);
    for (int nb = 1; nb <= 2; ++nb) {
        Unitary core = haar_random_unitary(4, rng);
        CMatrix lift = tensor_product(core.matrix(),
                                      CMatrix::Identity(Eigen::Index(1) << nb, Eigen::Index(1) << nb));
        Unitary u(2 + nb, lift);
        CMatrix traced = partial_trace(u, subset_of({1, 2}));
        CHECK(max_abs_diff(traced, std::pow(2.0, nb) * core.matrix()) < 1e-12);
    }
}

TEST_CASE("nuclear norm basics") {
    CHECK(nuclear_norm(CMatrix::Identity(8, 8)) == Catch::Approx(8.0).margin(1e-12));
    CHECK(nuclear_norm(CMatrix(2.0 * pauli_z())) == Catch::Approx(4.0).margin(1e-12));
    CHECK_THROWS_AS(nuclear_norm(CMatrix::Zero(2, 3)), ArgumentError);
    CHECK_THROWS_AS(nuclear_norm(CMatrix::Identity(128, 128)), CapacityError);
}

TEST_CASE("nuclear norm matches the eigenvalue oracle") {
    // Oracle: singular values are the square roots of the eigenvalues of
    // M^dag M, computed by an independent Hermitian eigensolver.
    RandomSource rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix m = random_matrix(4, rng);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(m.adjoint() * m));
        double expect = 0;
        for (Eigen::Index i = 0; i < 4; ++i)
            expect += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
        CHECK(nuclear_norm(m) == Catch::Approx(expect).margin(1e-9));
    }
}

TEST_CASE("nuclear norm is unitarily invariant") {
    RandomSource rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix m = random_matrix(8, rng);
        Unitary u = haar_random_unitary(8, rng);
        Unitary v = haar_random_unitary(8, rng);
        const double base = nuclear_norm(m);
        CHECK(nuclear_norm(CMatrix(u.matrix() * m * v.matrix())) ==
              Catch::Approx(base).margin(1e-8));
    }
}

TEST_CASE("entrywise perturbations move the nuclear norm by at most m^{3/2} tau") {
    RandomSource rng(16);
    for (int m_dim : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 25; ++trial) {
            CMatrix a = random_matrix(m_dim, rng);
            const double tau = 0.05 * (1 + trial % 3);
            CMatrix e(m_dim, m_dim);
            for (Eigen::Index i = 0; i < m_dim; ++i)
                for (Eigen::Index j = 0; j < m_dim; ++j) {
                    const double mag = tau * rng.uniform();
                    const double phase = 2 * M_PI * rng.uniform();
                    e(i, j) = std::polar(mag, phase);
                }
            const double drift = std::abs(nuclear_norm(CMatrix(a + e)) - nuclear_norm(a));
            CHECK(drift <= std::pow(m_dim, 1.5) * tau + 1e-9);
        }
    }
}

TEST_CASE("haar random unitaries are reproducible and unitary") {
    RandomSource rng_a(99), rng_b(99);
    Unitary u = haar_random_unitary(2, rng_a);
    Unitary v = haar_random_unitary(2, rng_b);
    CHECK(max_abs_diff(u.matrix(), v.matrix()) == 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        Unitary w = haar_random_unitary(16, rng_a);
        CHECK(unitarity_defect(w.matrix()) <= kUnitarityTol);
    }
    CHECK_THROWS_AS(haar_random_unitary(3, rng_a), CapacityError);
}

TEST_CASE("haar first moment matches the known average") {
    // Oracle: E|U[0][0]|^2 = 1/2 at dim 2; checked by Monte-Carlo convergence.
    RandomSource rng(7);
    double acc = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        acc += std::norm(haar_random_unitary(2, rng).matrix()(0, 0));
    CHECK(acc / draws == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("unitary constructor rejects bad input") {
    CMatrix not_unitary = CMatrix::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(Unitary(1, not_unitary), ArgumentError);
    CMatrix wrong_shape = CMatrix::Identity(3, 3);
    CHECK_THROWS_AS(Unitary(1, wrong_shape), ArgumentError);
    CMatrix nan_matrix = CMatrix::Identity(2, 2);
    nan_matrix(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Unitary(1, nan_matrix), ArgumentError);
}
