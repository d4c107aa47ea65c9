#ifndef JUNTA_BOOLEAN_HPP
#define JUNTA_BOOLEAN_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "junta/linalg.hpp"

namespace junta {

inline constexpr int kMaxBooleanVars = 14;

// Truth table over {+1,-1}^n.  Entry at index b is the value on the input
// whose variable i reads +1 when bit n-i of b is 0 and -1 when it is 1, so
// variable 1 owns the most significant index bit, matching the qubit order.
class BooleanFunction {
  public:
    BooleanFunction(int n, std::vector<std::int8_t> table)
        : n_(n), table_(std::move(table)) {
        if (n < 1 || n > kMaxBooleanVars)
            throw CapacityError("BooleanFunction: variable count outside [1,14]");
        if (table_.size() != (std::size_t(1) << n))
            throw ArgumentError("BooleanFunction: table length is not 2^n");
        for (std::int8_t v : table_)
            if (v != 1 && v != -1)
                throw ArgumentError("BooleanFunction: table entries must be +1 or -1");
    }

    int n() const { return n_; }
    std::size_t size() const { return table_.size(); }
    int value(std::size_t idx) const { return table_[idx]; }
    const std::vector<std::int8_t>& table() const { return table_; }

    bool operator==(const BooleanFunction& o) const {
        return n_ == o.n_ && table_ == o.table_;
    }

  private:
    int n_;
    std::vector<std::int8_t> table_;
};

// Fourier coefficients fhat(S), stored at the index-bit mask of S (variable i
// at bit n-i).  Use coefficient(Subset) for set-based access.
class FourierSpectrum {
  public:
    FourierSpectrum(int n, std::vector<double> coeffs)
        : n_(n), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != (std::size_t(1) << n))
            throw ArgumentError("FourierSpectrum: coefficient count is not 2^n");
    }

    int n() const { return n_; }
    std::size_t size() const { return coeffs_.size(); }
    double at_mask(std::size_t char_mask) const { return coeffs_[char_mask]; }
    double coefficient(Subset s) const { return coeffs_[index_mask(s, n_)]; }

    double total_weight() const {
        double acc = 0;
        for (double c : coeffs_) acc += c * c;
        return acc;
    }

  private:
    int n_;
    std::vector<double> coeffs_;
};

/// Exact spectrum by fast Walsh-Hadamard transform, fhat(S) = E_x[f(x) chi_S(x)].
inline FourierSpectrum fourier_transform(const BooleanFunction& f) {
    const std::size_t size = f.size();
    std::vector<double> a(size);
    for (std::size_t i = 0; i < size; ++i) a[i] = f.value(i);
    for (std::size_t h = 1; h < size; h <<= 1)
        for (std::size_t base = 0; base < size; base += 2 * h)
            for (std::size_t off = 0; off < h; ++off) {
                const double x = a[base + off];
                const double y = a[base + off + h];
                a[base + off] = x + y;
                a[base + off + h] = x - y;
            }
    const double scale = 1.0 / static_cast<double>(size);
    for (double& v : a) v *= scale;
    return FourierSpectrum(f.n(), std::move(a));
}

/// Inf_i(f) from the spectrum.
inline double influence_var(const FourierSpectrum& spec, int i) {
    if (i < 1 || i > spec.n()) throw ArgumentError("influence_var: index out of range");
    const std::size_t bit = std::size_t(1) << index_bit(spec.n(), i);
    double acc = 0;
    for (std::size_t m = 0; m < spec.size(); ++m)
        if (m & bit) acc += spec.at_mask(m) * spec.at_mask(m);
    return acc;
}

/// Inf_i(f) by its flip definition, Pr_x[f(x) != f(x with bit i flipped)].
inline double influence_var_flip(const BooleanFunction& f, int i) {
    if (i < 1 || i > f.n()) throw ArgumentError("influence_var_flip: index out of range");
    const std::size_t bit = std::size_t(1) << index_bit(f.n(), i);
    std::size_t diff = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f.value(x) != f.value(x ^ bit)) ++diff;
    return static_cast<double>(diff) / static_cast<double>(f.size());
}

inline double degree_k_influence(const FourierSpectrum& spec, int i, int k) {
    if (i < 1 || i > spec.n()) throw ArgumentError("degree_k_influence: index out of range");
    if (k < 1 || k > spec.n()) throw ArgumentError("degree_k_influence: k out of range");
    const std::size_t bit = std::size_t(1) << index_bit(spec.n(), i);
    double acc = 0;
    for (std::size_t m = 0; m < spec.size(); ++m)
        if ((m & bit) && __builtin_popcountll(m) <= k)
            acc += spec.at_mask(m) * spec.at_mask(m);
    return acc;
}

inline double influence_set(const FourierSpectrum& spec, Subset t) {
    const std::size_t mask = index_mask(t, spec.n());
    double acc = 0;
    for (std::size_t m = 0; m < spec.size(); ++m)
        if (m & mask) acc += spec.at_mask(m) * spec.at_mask(m);
    return acc;
}

inline double influence_var(const BooleanFunction& f, int i) {
    return influence_var(fourier_transform(f), i);
}
inline double degree_k_influence(const BooleanFunction& f, int i, int k) {
    return degree_k_influence(fourier_transform(f), i, k);
}
inline double influence_set(const BooleanFunction& f, Subset t) {
    return influence_set(fourier_transform(f), t);
}

/// Hamming fraction Pr_x[f(x) != g(x)].
inline double dist_boolean(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.n() != g.n()) throw ArgumentError("dist_boolean: dimension mismatch");
    std::size_t diff = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f.value(x) != g.value(x)) ++diff;
    return static_cast<double>(diff) / static_cast<double>(f.size());
}

/// corr(f,g) = E_x[f(x) g(x)] = 1 - 2 dist(f,g).
inline double corr_boolean(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.n() != g.n()) throw ArgumentError("corr_boolean: dimension mismatch");
    std::int64_t acc = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        acc += f.value(x) * g.value(x);
    return static_cast<double>(acc) / static_cast<double>(f.size());
}

struct BooleanJuntaFit {
    double distance = 0.0;
    BooleanFunction closest;
};

/// dist(f, J_T) with the minimizing junta.  The minimizer takes, on each
/// assignment to T, the plurality value of f over the remaining variables,
/// ties toward +1.
inline BooleanJuntaFit dist_to_junta_on_bool(const BooleanFunction& f, Subset t) {
    const int n = f.n();
    if ((t & ~full_set(n)) != 0)
        throw ArgumentError("dist_to_junta_on_bool: subset not contained in [n]");
    const int s = set_size(t);
    const std::vector<int> pos = set_elements(t);
    const std::size_t cells = std::size_t(1) << s;
    const std::size_t cell_size = std::size_t(1) << (n - s);
    std::vector<std::int8_t> table(f.size());
    std::size_t mismatches = 0;
    for (std::size_t z = 0; z < cells; ++z) {
        std::int64_t sum = 0;
        for (std::size_t w = 0; w < cell_size; ++w)
            sum += f.value(detail::assemble_index(n, pos, static_cast<std::uint32_t>(z), t,
                                                  static_cast<std::uint32_t>(w)));
        const std::int8_t g = (sum >= 0) ? 1 : -1;
        mismatches += static_cast<std::size_t>((static_cast<std::int64_t>(cell_size) - g * sum) / 2);
        for (std::size_t w = 0; w < cell_size; ++w)
            table[detail::assemble_index(n, pos, static_cast<std::uint32_t>(z), t,
                                         static_cast<std::uint32_t>(w))] = g;
    }
    return {static_cast<double>(mismatches) / static_cast<double>(f.size()),
            BooleanFunction(n, std::move(table))};
}

struct BooleanJuntaDistance {
    double distance = 0.0;
    Subset witness = 0;
};

/// Exact min over T in (candidates choose k) of dist(f, J_T), lexicographic
/// tie-break.  |candidates| < k falls back to T = candidates.
inline BooleanJuntaDistance dist_to_k_junta_bool(const BooleanFunction& f, int k,
                                                 Subset candidates) {
    const int n = f.n();
    if (k < 1 || k >= n) throw ArgumentError("dist_to_k_junta_bool: need 1 <= k < n");
    if ((candidates & ~full_set(n)) != 0)
        throw ArgumentError("dist_to_k_junta_bool: candidates not contained in [n]");
    const std::vector<int> pool = set_elements(candidates);
    if (static_cast<int>(pool.size()) < k)
        return {dist_to_junta_on_bool(f, candidates).distance, candidates};
    if (binomial(static_cast<int>(pool.size()), k) > 2'000'000)
        throw CapacityError("dist_to_k_junta_bool: candidate enumeration too large");
    BooleanJuntaDistance best;
    bool have = false;
    for_each_combination(pool, k, [&](Subset t) {
        const double d = dist_to_junta_on_bool(f, t).distance;
        if (!have || d < best.distance) {
            best = {d, t};
            have = true;
        }
    });
    return best;
}

inline BooleanJuntaDistance dist_to_k_junta_bool(const BooleanFunction& f, int k) {
    return dist_to_k_junta_bool(f, k, full_set(f.n()));
}

/// Diagonal +-1 unitary whose diagonal is the truth table of f.
inline Unitary embed_unitary(const BooleanFunction& f) {
    if (f.n() > kMaxQubits) throw CapacityError("embed_unitary: n exceeds qubit capacity");
    const Eigen::Index dim = Eigen::Index(1) << f.n();
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x)
        m(x, x) = static_cast<double>(f.value(static_cast<std::size_t>(x)));
    return Unitary(f.n(), std::move(m));
}

}  // namespace junta

#endif
