#ifndef JUNTA_PAULI_HPP
#define JUNTA_PAULI_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "junta/linalg.hpp"

namespace junta {

inline constexpr int kMaxSpectrumQubits = 8;   // dense 4^n coefficient vector
inline constexpr int kMaxJuntaSetSize = 6;     // partial-trace SVD cap

// Element of Z_4^n.  word[i] is the letter on qubit i+1 (0=I, 1=X, 2=Y, 3=Z).
struct PauliString {
    int n = 0;
    std::vector<std::uint8_t> word;

    Subset support() const {
        Subset s = 0;
        for (int i = 1; i <= n; ++i)
            if (word[i - 1] != 0) s |= 1u << (i - 1);
        return s;
    }
    int weight() const { return set_size(support()); }

    // Base-4 encoding with qubit 1 as the most significant digit, matching
    // the Kronecker ordering of sigma_x = sigma_{x_1} (x) ... (x) sigma_{x_n}.
    std::size_t encode() const {
        std::size_t e = 0;
        for (int i = 0; i < n; ++i) e = e * 4 + word[i];
        return e;
    }
    static PauliString decode(int n, std::size_t e) {
        PauliString p;
        p.n = n;
        p.word.assign(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            p.word[i] = static_cast<std::uint8_t>(e & 3u);
            e >>= 2;
        }
        return p;
    }
    std::string label() const {
        static const char letters[] = "IXYZ";
        std::string out;
        for (int i = 0; i < n; ++i) out += letters[word[i]];
        return out;
    }
};

inline CMatrix pauli_matrix(const PauliString& p) {
    CMatrix m = single_qubit_pauli(p.n >= 1 ? p.word[0] : 0);
    for (int i = 1; i < p.n; ++i) m = tensor_product(m, single_qubit_pauli(p.word[i]));
    return m;
}

namespace detail {

// Support mask (Subset convention) of the Pauli string encoded by e.
inline Subset pauli_support(int n, std::size_t e) {
    Subset s = 0;
    for (int i = n; i >= 1; --i) {
        if ((e & 3u) != 0) s |= 1u << (i - 1);
        e >>= 2;
    }
    return s;
}

}  // namespace detail

// Dense vector of the 4^n coefficients of U in the normalized Pauli basis,
// indexed by PauliString::encode().  Carries cached per-index support data
// for the samplers and influence sums.
class PauliSpectrum {
  public:
    PauliSpectrum(int n, std::vector<Complex> coeffs)
        : n_(n), coeffs_(std::move(coeffs)) {
        const std::size_t size = std::size_t(1) << (2 * n);
        if (coeffs_.size() != size)
            throw ArgumentError("PauliSpectrum: coefficient count is not 4^n");
        supports_.resize(size);
        weights_.resize(size);
        for (std::size_t e = 0; e < size; ++e) {
            supports_[e] = detail::pauli_support(n, e);
            weights_[e] = static_cast<std::uint8_t>(set_size(supports_[e]));
        }
    }

    int n() const { return n_; }
    std::size_t size() const { return coeffs_.size(); }
    Complex coefficient(std::size_t e) const { return coeffs_[e]; }
    Complex coefficient(const PauliString& p) const { return coeffs_[p.encode()]; }
    double weight_at(std::size_t e) const { return std::norm(coeffs_[e]); }
    Subset support_of(std::size_t e) const { return supports_[e]; }
    int pauli_weight_of(std::size_t e) const { return weights_[e]; }

    double total_weight() const {
        double acc = 0;
        for (const Complex& c : coeffs_) acc += std::norm(c);
        return acc;
    }

  private:
    int n_;
    std::vector<Complex> coeffs_;
    std::vector<Subset> supports_;
    std::vector<std::uint8_t> weights_;
};

/// Full Pauli decomposition, Uhat(x) = Tr(sigma_x U) / 2^n for every x in
/// Z_4^n.  Runs in O(n 4^n) by transforming one qubit index pair at a time.
inline PauliSpectrum pauli_spectrum(const Unitary& u) {
    const int n = u.n();
    if (n > kMaxSpectrumQubits)
        throw CapacityError("pauli_spectrum: dense spectrum limited to n <= 8");
    const std::size_t dim = std::size_t(1) << n;
    const std::size_t size = dim * dim;
    std::vector<Complex> a(size);

    // Regroup U(row, col) so that qubit i owns one base-4 digit 2*r_i + c_i,
    // with qubit 1 as the most significant digit.
    const CMatrix& m = u.matrix();
    for (std::size_t row = 0; row < dim; ++row)
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t q = 0;
            for (int i = 1; i <= n; ++i) {
                const std::size_t rb = (row >> index_bit(n, i)) & 1u;
                const std::size_t cb = (col >> index_bit(n, i)) & 1u;
                q = (q << 2) | (rb << 1) | cb;
            }
            a[q] = m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }

    // Per-qubit butterfly mapping block entries (a b; c d) to the four
    // normalized Pauli components.
    const Complex half_i(0.0, 0.5);
    for (int p = 0; p < n; ++p) {
        const std::size_t stride = std::size_t(1) << (2 * p);
        const std::size_t block = stride * 4;
        for (std::size_t base = 0; base < size; base += block)
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t q0 = base + off;
                const Complex va = a[q0];
                const Complex vb = a[q0 + stride];
                const Complex vc = a[q0 + 2 * stride];
                const Complex vd = a[q0 + 3 * stride];
                a[q0] = 0.5 * (va + vd);
                a[q0 + stride] = 0.5 * (vb + vc);
                a[q0 + 2 * stride] = half_i * (vb - vc);
                a[q0 + 3 * stride] = 0.5 * (va - vd);
            }
    }
    return PauliSpectrum(n, std::move(a));
}

/// Inf_i[U]: total spectral weight on strings with a non-identity letter at
/// qubit i.
inline double influence_qubit(const PauliSpectrum& spec, int i) {
    if (i < 1 || i > spec.n()) throw ArgumentError("influence_qubit: index out of range");
    const Subset bit = 1u << (i - 1);
    double acc = 0;
    for (std::size_t e = 0; e < spec.size(); ++e)
        if (spec.support_of(e) & bit) acc += spec.weight_at(e);
    return acc;
}

/// Inf_i^{<=k}[U]: as influence_qubit but restricted to strings of weight <= k.
inline double degree_k_influence(const PauliSpectrum& spec, int i, int k) {
    if (i < 1 || i > spec.n()) throw ArgumentError("degree_k_influence: index out of range");
    if (k < 1 || k > spec.n()) throw ArgumentError("degree_k_influence: k out of range");
    const Subset bit = 1u << (i - 1);
    double acc = 0;
    for (std::size_t e = 0; e < spec.size(); ++e)
        if ((spec.support_of(e) & bit) && spec.pauli_weight_of(e) <= k)
            acc += spec.weight_at(e);
    return acc;
}

/// Inf_T[U]: weight on strings whose support meets T.
inline double influence_set(const PauliSpectrum& spec, Subset t) {
    double acc = 0;
    for (std::size_t e = 0; e < spec.size(); ++e)
        if (spec.support_of(e) & t) acc += spec.weight_at(e);
    return acc;
}

inline double influence_qubit(const Unitary& u, int i) {
    return influence_qubit(pauli_spectrum(u), i);
}
inline double degree_k_influence(const Unitary& u, int i, int k) {
    return degree_k_influence(pauli_spectrum(u), i, k);
}
inline double influence_set(const Unitary& u, Subset t) {
    return influence_set(pauli_spectrum(u), t);
}

/// Phase-minimized normalized Frobenius distance,
/// dist(U,V) = sqrt(1 - |Tr(U^dag V)| / 2^n).
inline double dist_unitary(const Unitary& u, const Unitary& v) {
    if (u.n() != v.n()) throw ArgumentError("dist_unitary: dimension mismatch");
    const double overlap =
        std::abs((u.matrix().adjoint() * v.matrix()).trace()) / static_cast<double>(u.dim());
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

/// Exact distance from U to the junta unitaries acting only on T,
/// dist(U, J_T) = sqrt(1 - ||Tr_{T^c}(U)||_* / 2^n).
inline double dist_to_junta_on(const Unitary& u, Subset t) {
    if ((t & ~full_set(u.n())) != 0)
        throw ArgumentError("dist_to_junta_on: subset not contained in [n]");
    if (set_size(t) > kMaxJuntaSetSize)
        throw CapacityError("dist_to_junta_on: |T| exceeds SVD capacity");
    const double norm = nuclear_norm(partial_trace(u, t));
    return std::sqrt(std::max(0.0, 1.0 - norm / static_cast<double>(u.dim())));
}

struct JuntaDistance {
    double distance = 0.0;
    Subset witness = 0;
};

/// Exact min_T dist(U, J_T) over T in (candidates choose k).  Ties break to
/// the lexicographically smallest T.  When |candidates| < k the single set
/// T = candidates is used.
inline JuntaDistance dist_to_k_junta(const Unitary& u, int k, Subset candidates) {
    const int n = u.n();
    if (k < 1 || k >= n) throw ArgumentError("dist_to_k_junta: need 1 <= k < n");
    if ((candidates & ~full_set(n)) != 0)
        throw ArgumentError("dist_to_k_junta: candidates not contained in [n]");
    const std::vector<int> pool = set_elements(candidates);
    if (static_cast<int>(pool.size()) < k)
        return {dist_to_junta_on(u, candidates), candidates};
    if (binomial(static_cast<int>(pool.size()), k) > 2'000'000)
        throw CapacityError("dist_to_k_junta: candidate enumeration too large");
    JuntaDistance best;
    bool have = false;
    for_each_combination(pool, k, [&](Subset t) {
        const double d = dist_to_junta_on(u, t);
        if (!have || d < best.distance) {
            best = {d, t};
            have = true;
        }
    });
    return best;
}

inline JuntaDistance dist_to_k_junta(const Unitary& u, int k) {
    return dist_to_k_junta(u, k, full_set(u.n()));
}

}  // namespace junta

#endif
