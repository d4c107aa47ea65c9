#ifndef JUNTA_LINALG_HPP
#define JUNTA_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <utility>

#include "junta/common.hpp"

namespace junta {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;               // dense matrices up to 4096 x 4096
inline constexpr int kMaxNuclearDim = 64;           // SVD consumer cap (2^6)
inline constexpr double kUnitarityTol = 1e-10;

inline bool is_finite(const CMatrix& m) {
    return m.allFinite();
}

/// Max-norm deviation of U from unitarity, ||U^dag U - I||_max.
inline double unitarity_defect(const CMatrix& m) {
    CMatrix g = m.adjoint() * m;
    g -= CMatrix::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

// An n-qubit unitary, validated at construction.  Immutable afterwards.
class Unitary {
  public:
    Unitary(int n, CMatrix matrix) : n_(n), m_(std::move(matrix)) {
        if (n < 1 || n > kMaxQubits)
            throw CapacityError("Unitary: qubit count " + std::to_string(n) +
                                " outside [1," + std::to_string(kMaxQubits) + "]");
        const Eigen::Index dim = Eigen::Index(1) << n;
        if (m_.rows() != dim || m_.cols() != dim)
            throw ArgumentError("Unitary: matrix shape does not match qubit count");
        if (!is_finite(m_)) throw ArgumentError("Unitary: non-finite entries");
        if (unitarity_defect(m_) > kUnitarityTol)
            throw ArgumentError("Unitary: matrix is not unitary within tolerance");
    }

    int n() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix& matrix() const { return m_; }

  private:
    int n_;
    CMatrix m_;
};

/// Kronecker product with qubit 1 as the most significant index bit.
inline CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index max_dim = Eigen::Index(1) << kMaxQubits;
    if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim)
        throw CapacityError("tensor_product: result exceeds 2^12 x 2^12");
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace detail {

// Scatters the bits of `sub` (over the elements of `positions`, ascending) and
// `rest` (over the remaining positions) into one n-bit basis index.
inline std::uint32_t assemble_index(int n, const std::vector<int>& positions, std::uint32_t sub,
                                    Subset keep, std::uint32_t rest) {
    std::uint32_t idx = 0;
    int sub_bit = static_cast<int>(positions.size()) - 1;
    int rest_bit = n - static_cast<int>(positions.size()) - 1;
    for (int i = 1; i <= n; ++i) {
        std::uint32_t bit;
        if (contains(keep, i)) {
            bit = (sub >> sub_bit--) & 1u;
        } else {
            bit = (rest >> rest_bit--) & 1u;
        }
        idx = (idx << 1) | bit;
    }
    return idx;
}

}  // namespace detail

/// Partial trace over the complement of `keep`: sums <i|_rest M |i>_rest over
/// all computational-basis states of the traced-out qubits.  The result is
/// indexed by the kept qubits in ascending order.  keep == 0 yields the 1x1
/// matrix [Tr M].
inline CMatrix partial_trace(const CMatrix& m, int n, Subset keep) {
    if (m.rows() != m.cols() || m.rows() != (Eigen::Index(1) << n))
        throw ArgumentError("partial_trace: matrix is not 2^n x 2^n");
    if ((keep & ~full_set(n)) != 0)
        throw ArgumentError("partial_trace: subset not contained in [n]");
    const int s = set_size(keep);
    const std::vector<int> pos = set_elements(keep);
    const std::uint32_t sub_dim = 1u << s;
    const std::uint32_t rest_dim = 1u << (n - s);
    CMatrix out = CMatrix::Zero(sub_dim, sub_dim);
    for (std::uint32_t i = 0; i < sub_dim; ++i)
        for (std::uint32_t j = 0; j < sub_dim; ++j) {
            Complex acc = 0;
            for (std::uint32_t l = 0; l < rest_dim; ++l)
                acc += m(detail::assemble_index(n, pos, i, keep, l),
                         detail::assemble_index(n, pos, j, keep, l));
            out(i, j) = acc;
        }
    return out;
}

inline CMatrix partial_trace(const Unitary& u, Subset keep) {
    return partial_trace(u.matrix(), u.n(), keep);
}

/// Sum of singular values (Schatten 1-norm) via full SVD.
inline double nuclear_norm(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ArgumentError("nuclear_norm: matrix not square");
    if (m.rows() > kMaxNuclearDim)
        throw CapacityError("nuclear_norm: dimension exceeds " + std::to_string(kMaxNuclearDim));
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().sum();
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix, with the
/// phases of the R diagonal absorbed into Q.
inline Unitary haar_random_unitary(Eigen::Index dim, RandomSource& rng) {
    if (dim < 2 || (dim & (dim - 1)) != 0 || dim > (Eigen::Index(1) << kMaxQubits))
        throw CapacityError("haar_random_unitary: dim must be a power of two in [2, 2^12]");
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    CMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        q.col(j) *= (mag > 0) ? d / mag : Complex(1, 0);
    }
    return Unitary(n, std::move(q));
}

// Single-qubit constants.
inline const CMatrix& pauli_i() {
    static const CMatrix m = (CMatrix(2, 2) << 1, 0, 0, 1).finished();
    return m;
}
inline const CMatrix& pauli_x() {
    static const CMatrix m = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    return m;
}
inline const CMatrix& pauli_y() {
    static const CMatrix m =
        (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}
inline const CMatrix& pauli_z() {
    static const CMatrix m = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
    return m;
}
inline const CMatrix& single_qubit_pauli(int digit) {
    switch (digit) {
        case 0: return pauli_i();
        case 1: return pauli_x();
        case 2: return pauli_y();
        default: return pauli_z();
    }
}

}  // namespace junta

#endif
