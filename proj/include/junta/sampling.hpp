#ifndef JUNTA_SAMPLING_HPP
#define JUNTA_SAMPLING_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "junta/pauli.hpp"

namespace junta {

// Exact count of simulated oracle uses, split by subroutine.  One entry per
// Fourier-Sample call, one per Influence-Sample call, and one per controlled
// application of U inside a Hadamard-test shot.
struct QueryLedger {
    std::int64_t fourier_sample_calls = 0;
    std::int64_t influence_sample_calls = 0;
    std::int64_t controlled_u_applications = 0;

    bool operator==(const QueryLedger&) const = default;
};

/// Choi-Jamiolkowski state of U as a length-4^n amplitude vector,
/// (1/sqrt(N)) sum_{i,j} U[i,j] |i>|j>.
inline CVector choi_state(const Unitary& u) {
    const Eigen::Index dim = u.dim();
    CVector v(dim * dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            v(i * dim + j) = u.matrix()(i, j) * scale;
    return v;
}

// Draws Pauli strings x with probability |Uhat(x)|^2.  The Choi-state
// measurement is simulated at the distribution level: the output law of the
// subroutine is exactly the spectral weight distribution, so a categorical
// draw over the precomputed spectrum reproduces it.
class FourierSampler {
  public:
    FourierSampler(std::shared_ptr<const PauliSpectrum> spectrum, RandomSource& rng,
                   QueryLedger& ledger)
        : spectrum_(std::move(spectrum)), rng_(&rng), ledger_(&ledger) {
        cumulative_.resize(spectrum_->size());
        double acc = 0;
        for (std::size_t e = 0; e < spectrum_->size(); ++e) {
            acc += spectrum_->weight_at(e);
            cumulative_[e] = acc;
        }
        total_ = acc;
    }

    FourierSampler(const Unitary& u, RandomSource& rng, QueryLedger& ledger)
        : FourierSampler(std::make_shared<PauliSpectrum>(pauli_spectrum(u)), rng, ledger) {}

    const PauliSpectrum& spectrum() const { return *spectrum_; }

    std::size_t draw_encoded() {
        ledger_->fourier_sample_calls += 1;
        const double u = rng_->uniform() * total_;
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        std::size_t e = static_cast<std::size_t>(it - cumulative_.begin());
        if (e >= cumulative_.size()) e = cumulative_.size() - 1;
        return e;
    }

    PauliString draw() { return PauliString::decode(spectrum_->n(), draw_encoded()); }

  private:
    std::shared_ptr<const PauliSpectrum> spectrum_;
    RandomSource* rng_;
    QueryLedger* ledger_;
    std::vector<double> cumulative_;
    double total_ = 0;
};

inline PauliString fourier_sample(const Unitary& u, RandomSource& rng, QueryLedger& ledger) {
    FourierSampler s(u, rng, ledger);
    return s.draw();
}

namespace detail {

inline const CMatrix& gate_h() {
    static const CMatrix m = (CMatrix(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    return m;
}
// R = (1/sqrt 2) [[1, -i], [-i, 1]].
inline const CMatrix& gate_r() {
    static const CMatrix m =
        ((CMatrix(2, 2) << 1, Complex(0, -1), Complex(0, -1), 1).finished()) / std::sqrt(2.0);
    return m;
}

// In-place M <- (V^dag)^{(x) n} M: applies the 2x2 gate adjoint on every row
// index bit.
inline void apply_gate_rows(CMatrix& m, const CMatrix& v, int n) {
    const CMatrix vd = v.adjoint();
    const Eigen::Index dim = m.rows();
    for (int bit = 0; bit < n; ++bit) {
        const Eigen::Index stride = Eigen::Index(1) << bit;
        for (Eigen::Index base = 0; base < dim; base += 2 * stride)
            for (Eigen::Index off = 0; off < stride; ++off) {
                const Eigen::Index r0 = base + off;
                const Eigen::Index r1 = r0 + stride;
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const Complex a = m(r0, c);
                    const Complex b = m(r1, c);
                    m(r0, c) = vd(0, 0) * a + vd(0, 1) * b;
                    m(r1, c) = vd(1, 0) * a + vd(1, 1) * b;
                }
            }
    }
}

// In-place M <- M V^{(x) n}: applies the gate on every column index bit.
inline void apply_gate_cols(CMatrix& m, const CMatrix& v, int n) {
    const Eigen::Index dim = m.cols();
    for (int bit = 0; bit < n; ++bit) {
        const Eigen::Index stride = Eigen::Index(1) << bit;
        for (Eigen::Index base = 0; base < dim; base += 2 * stride)
            for (Eigen::Index off = 0; off < stride; ++off) {
                const Eigen::Index c0 = base + off;
                const Eigen::Index c1 = c0 + stride;
                for (Eigen::Index r = 0; r < dim; ++r) {
                    const Complex a = m(r, c0);
                    const Complex b = m(r, c1);
                    m(r, c0) = v(0, 0) * a + v(1, 0) * b;
                    m(r, c1) = v(0, 1) * a + v(1, 1) * b;
                }
            }
    }
}

// (V^dag)^{(x)n} U V^{(x)n} through 2n single-qubit sweeps.
inline CMatrix conjugate_by_gate(const CMatrix& u, const CMatrix& v, int n) {
    CMatrix m = u;
    apply_gate_rows(m, v, n);
    apply_gate_cols(m, v, n);
    return m;
}

}  // namespace detail

// Simulates the single-qubit-operations subroutine at the circuit level:
// draw y uniformly and V uniformly from {I, H, R}, form (V^dag)^{(x)n} U
// V^{(x)n} |y>, measure to get y', and return x = y xor y'.  Output support
// probabilities sandwich set influences within a factor 3/2.
class InfluenceSampler {
  public:
    static constexpr int kGateCount = 3;

    InfluenceSampler(Unitary u, RandomSource& rng, QueryLedger& ledger)
        : u_(std::move(u)), n_(u_.n()), rng_(&rng), ledger_(&ledger) {
        if (n_ > kMaxQubits) throw CapacityError("InfluenceSampler: n exceeds capacity");
        cache_matrices_ = n_ <= 9;
        conjugated_.resize(kGateCount);
        if (cache_matrices_) column_cdf_.assign(kGateCount * u_.dim(), {});
    }

    /// One run of the subroutine; returns x = y xor y' in basis-index layout.
    std::uint32_t draw() {
        ledger_->influence_sample_calls += 1;
        const std::uint32_t y = static_cast<std::uint32_t>(rng_->uniform_index(u_.dim()));
        const int gate = static_cast<int>(rng_->uniform_index(kGateCount));
        const std::uint32_t yp = sample_output(gate, y);
        return y ^ yp;
    }

    Subset draw_support() {
        const std::uint32_t x = draw();
        Subset s = 0;
        for (int i = 1; i <= n_; ++i)
            if ((x >> index_bit(n_, i)) & 1u) s |= 1u << (i - 1);
        return s;
    }

    static const CMatrix& gate(int g) {
        switch (g) {
            case 0: return pauli_i();
            case 1: return detail::gate_h();
            default: return detail::gate_r();
        }
    }

  private:
    std::uint32_t sample_output(int gate_idx, std::uint32_t y) {
        const Eigen::Index dim = u_.dim();
        const double u = rng_->uniform();
        if (cache_matrices_) {
            const std::vector<double>& cdf = column_distribution(gate_idx, y);
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
            std::size_t yp = static_cast<std::size_t>(it - cdf.begin());
            if (yp >= cdf.size()) yp = cdf.size() - 1;
            return static_cast<std::uint32_t>(yp);
        }
        // Heavy path for large n: no matrix cache, one matvec per call.
        const CVector amps = output_amplitudes(gate_idx, y);
        double acc = 0;
        const double target = u * amps.squaredNorm();
        for (Eigen::Index z = 0; z < dim; ++z) {
            acc += std::norm(amps(z));
            if (target < acc) return static_cast<std::uint32_t>(z);
        }
        return static_cast<std::uint32_t>(dim - 1);
    }

    const std::vector<double>& column_distribution(int gate_idx, std::uint32_t y) {
        std::vector<double>& cdf = column_cdf_[gate_idx * u_.dim() + y];
        if (cdf.empty()) {
            const CMatrix& w = conjugated_matrix(gate_idx);
            cdf.resize(w.rows());
            double acc = 0;
            for (Eigen::Index z = 0; z < w.rows(); ++z) {
                acc += std::norm(w(z, y));
                cdf[z] = acc;
            }
        }
        return cdf;
    }

    const CMatrix& conjugated_matrix(int gate_idx) {
        CMatrix& m = conjugated_[gate_idx];
        if (m.size() == 0) m = detail::conjugate_by_gate(u_.matrix(), gate(gate_idx), n_);
        return m;
    }

    CVector output_amplitudes(int gate_idx, std::uint32_t y) const {
        const Eigen::Index dim = u_.dim();
        const CMatrix& v = gate(gate_idx);
        // V^{(x)n} |y> is a product state.
        CVector w(dim);
        w(0) = 1.0;
        Eigen::Index cur = 1;
        for (int i = 1; i <= n_; ++i) {
            const int ybit = (y >> index_bit(n_, i)) & 1u;
            for (Eigen::Index z = cur - 1; z >= 0; --z) {
                const Complex amp = w(z);
                w(2 * z) = amp * v(0, ybit);
                w(2 * z + 1) = amp * v(1, ybit);
            }
            cur *= 2;
        }
        CVector out = u_.matrix() * w;
        // Apply (V^dag)^{(x)n}.
        const CMatrix vd = v.adjoint();
        for (int bit = 0; bit < n_; ++bit) {
            const Eigen::Index stride = Eigen::Index(1) << bit;
            for (Eigen::Index base = 0; base < dim; base += 2 * stride)
                for (Eigen::Index off = 0; off < stride; ++off) {
                    const Complex a = out(base + off);
                    const Complex b = out(base + off + stride);
                    out(base + off) = vd(0, 0) * a + vd(0, 1) * b;
                    out(base + off + stride) = vd(1, 0) * a + vd(1, 1) * b;
                }
        }
        return out;
    }

    Unitary u_;
    int n_;
    RandomSource* rng_;
    QueryLedger* ledger_;
    bool cache_matrices_;
    std::vector<CMatrix> conjugated_;
    std::vector<std::vector<double>> column_cdf_;
};

inline std::uint32_t influence_sample(const Unitary& u, RandomSource& rng, QueryLedger& ledger) {
    InfluenceSampler s(u, rng, ledger);
    return s.draw();
}

/// Exact output law of the subroutine, by enumerating every (V, y) branch and
/// every measurement outcome.  Index layout matches InfluenceSampler::draw().
/// Setting with_r_gate = false enumerates the two-gate {I, H} variant.
inline std::vector<double> influence_sample_exact_distribution(const Unitary& u,
                                                               bool with_r_gate = true) {
    if (u.n() > 6)
        throw CapacityError("influence_sample_exact_distribution: limited to n <= 6");
    const Eigen::Index dim = u.dim();
    const int gates = with_r_gate ? 3 : 2;
    std::vector<double> law(static_cast<std::size_t>(dim), 0.0);
    const double branch_prob = 1.0 / (gates * static_cast<double>(dim));
    for (int g = 0; g < gates; ++g) {
        const CMatrix w = detail::conjugate_by_gate(u.matrix(), InfluenceSampler::gate(g), u.n());
        for (Eigen::Index y = 0; y < dim; ++y)
            for (Eigen::Index yp = 0; yp < dim; ++yp)
                law[static_cast<std::size_t>(y ^ yp)] += branch_prob * std::norm(w(yp, y));
    }
    return law;
}

/// Probability that the sampled string is nonzero somewhere on T.
inline double support_hit_probability(const std::vector<double>& law, int n, Subset t) {
    const std::uint32_t mask = index_mask(t, n);
    double acc = 0;
    for (std::size_t x = 0; x < law.size(); ++x)
        if (x & mask) acc += law[x];
    return acc;
}

/// Shots per quadrature for a Hadamard-test estimate of one amplitude to
/// combined additive error tau with failure probability delta.  Each
/// quadrature gets error budget tau/sqrt(2) and two Hoeffding tails, hence
/// m = ceil(2 ln(4/delta) / (tau/sqrt 2)^2).
inline std::int64_t hadamard_test_shots(double tau, double delta) {
    if (!(tau > 0 && tau < 1) || !(delta > 0 && delta < 1))
        throw ArgumentError("hadamard_test_shots: tau and delta must lie in (0,1)");
    const double per_quadrature = tau / std::sqrt(2.0);
    return static_cast<std::int64_t>(
        std::ceil(2.0 * std::log(4.0 / delta) / (per_quadrature * per_quadrature)));
}

/// Statistical simulation of the Hadamard test for a = <bra|U|ket>: the true
/// amplitude is computed exactly, then each quadrature is estimated from m
/// Bernoulli shots with mean (1 +- component)/2.  The m shots are drawn as a
/// single binomial count, which has the identical law.  Guarantees
/// Pr[|estimate - a| <= tau] >= 1 - delta and books 2m controlled
/// applications of U.
inline Complex hadamard_test_estimate(const Unitary& u, Eigen::Index bra, Eigen::Index ket,
                                      double tau, double delta, RandomSource& rng,
                                      QueryLedger& ledger) {
    if (bra < 0 || bra >= u.dim() || ket < 0 || ket >= u.dim())
        throw ArgumentError("hadamard_test_estimate: basis index out of range");
    const std::int64_t m = hadamard_test_shots(tau, delta);
    const Complex a = u.matrix()(bra, ket);
    const double p_re = std::clamp(0.5 * (1.0 + a.real()), 0.0, 1.0);
    const double p_im = std::clamp(0.5 * (1.0 + a.imag()), 0.0, 1.0);
    const double r = static_cast<double>(rng.binomial_draw(m, p_re)) / static_cast<double>(m);
    const double s = static_cast<double>(rng.binomial_draw(m, p_im)) / static_cast<double>(m);
    ledger.controlled_u_applications += 2 * m;
    return {2.0 * r - 1.0, 2.0 * s - 1.0};
}

}  // namespace junta

#endif
