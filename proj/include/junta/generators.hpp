#ifndef JUNTA_GENERATORS_HPP
#define JUNTA_GENERATORS_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "junta/oracles.hpp"

namespace junta {

inline constexpr int kGeneratorMaxAttempts = 100;

struct JuntaUnitaryInstance {
    Unitary u;
    Subset acting_on = 0;
    double distance = 0;  // certified distance to the k-junta class
    int attempts = 1;     // rejection-sampling attempts consumed
};

/// Builds a k-qubit Haar unitary on a uniformly random size-k subset T,
/// extended by the identity elsewhere.  Exact k-junta by construction.
inline JuntaUnitaryInstance random_k_junta_unitary(int n, int k, RandomSource& rng) {
    if (k < 1 || k > n) throw ArgumentError("random_k_junta_unitary: need 1 <= k <= n");
    if (n > kMaxQubits) throw CapacityError("random_k_junta_unitary: n exceeds capacity");
    std::vector<int> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coords[i] = i + 1;
    Subset t = 0;
    for (int picked = 0; picked < k; ++picked) {
        const std::size_t at =
            static_cast<std::size_t>(rng.uniform_index(coords.size()));
        t |= 1u << (coords[at] - 1);
        coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(at));
    }
    const Unitary core = haar_random_unitary(Eigen::Index(1) << k, rng);
    const std::vector<int> pos = set_elements(t);
    const Eigen::Index dim = Eigen::Index(1) << n;
    const std::uint32_t sub_dim = 1u << k;
    const std::uint32_t rest_dim = 1u << (n - k);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (std::uint32_t i = 0; i < sub_dim; ++i)
        for (std::uint32_t j = 0; j < sub_dim; ++j) {
            const Complex v = core.matrix()(i, j);
            if (v == Complex(0, 0)) continue;
            for (std::uint32_t l = 0; l < rest_dim; ++l)
                m(detail::assemble_index(n, pos, i, t, l),
                  detail::assemble_index(n, pos, j, t, l)) = v;
        }
    return {Unitary(n, std::move(m)), t, 0.0, 1};
}

namespace detail {

// Random Hermitian direction, Gaussian entries symmetrized and scaled to unit
// operator norm.
inline CMatrix random_hermitian_direction(Eigen::Index dim, RandomSource& rng) {
    CMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (top <= 0) return CMatrix::Identity(dim, dim);
    return h / top;
}

}  // namespace detail

/// Perturbed YES instance: U = W exp(i theta G) for a random k-junta W and a
/// random Hermitian direction G, with theta tuned by bracketing plus
/// bisection until the exact oracle distance lands in
/// [eps_target/2, eps_target].  Non-bracketing geometry triggers a dense
/// sweep, then a resample with fresh W and G.
inline JuntaUnitaryInstance perturbed_junta_unitary(int n, int k, double eps_target,
                                                    RandomSource& rng) {
    if (n > 6) throw CapacityError("perturbed_junta_unitary: certification limited to n <= 6");
    if (!(eps_target > 0 && eps_target < 1))
        throw ArgumentError("perturbed_junta_unitary: eps_target must lie in (0,1)");
    const double lo_target = eps_target / 2.0;
    const Eigen::Index dim = Eigen::Index(1) << n;

    for (int attempt = 1; attempt <= kGeneratorMaxAttempts; ++attempt) {
        const JuntaUnitaryInstance base = random_k_junta_unitary(n, k, rng);
        const CMatrix g = detail::random_hermitian_direction(dim, rng);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
        const CMatrix evecs = es.eigenvectors();
        const Eigen::VectorXd evals = es.eigenvalues();

        auto at_theta = [&](double theta) {
            CVector phases(dim);
            for (Eigen::Index i = 0; i < dim; ++i)
                phases(i) = std::polar(1.0, theta * evals(i));
            CMatrix expg = evecs * phases.asDiagonal() * evecs.adjoint();
            return Unitary(n, base.u.matrix() * expg);
        };
        auto dist_at = [&](double theta) {
            return dist_to_k_junta(at_theta(theta), k).distance;
        };

        // Bracket: grow theta until the distance clears eps_target/2.
        double lo = 0.0, hi = 0.02, d_hi = dist_at(hi);
        bool bracketed = true;
        while (d_hi < lo_target) {
            lo = hi;
            hi *= 2.0;
            if (hi > 64.0) {
                bracketed = false;
                break;
            }
            d_hi = dist_at(hi);
        }
        if (!bracketed) continue;

        double found = -1.0;
        if (d_hi <= eps_target) {
            found = hi;
        } else {
            for (int iter = 0; iter < 40 && found < 0; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double d = dist_at(mid);
                if (d < lo_target)
                    lo = mid;
                else if (d > eps_target)
                    hi = mid;
                else
                    found = mid;
            }
            if (found < 0) {
                // Bisection assumes local monotonicity; sweep densely before
                // giving up on this draw.
                for (int step = 1; step <= 512 && found < 0; ++step) {
                    const double theta = hi * step / 512.0;
                    const double d = dist_at(theta);
                    if (d >= lo_target && d <= eps_target) found = theta;
                }
            }
        }
        if (found < 0) continue;
        Unitary u = at_theta(found);
        const JuntaDistance exact = dist_to_k_junta(u, k);
        if (exact.distance > eps_target) continue;
        return {std::move(u), base.acting_on, exact.distance, attempt};
    }
    throw GenerationError("perturbed_junta_unitary: no admissible perturbation after " +
                          std::to_string(kGeneratorMaxAttempts) + " resamples");
}

/// Certified NO instance: rejection-samples Haar unitaries until the exact
/// distance to every k-junta reaches eps2.
inline JuntaUnitaryInstance far_unitary_instance(int n, int k, double eps2, RandomSource& rng) {
    double max_seen = 0;
    for (int attempt = 1; attempt <= kGeneratorMaxAttempts; ++attempt) {
        Unitary u = haar_random_unitary(Eigen::Index(1) << n, rng);
        const JuntaDistance d = dist_to_k_junta(u, k);
        max_seen = std::max(max_seen, d.distance);
        if (d.distance >= eps2) return {std::move(u), d.witness, d.distance, attempt};
    }
    throw GenerationError("far_unitary_instance: no draw reached eps2=" + std::to_string(eps2) +
                          " (max observed distance " + std::to_string(max_seen) + ")");
}

struct JuntaBooleanInstance {
    BooleanFunction f;
    Subset acting_on = 0;
    double distance = 0;
    int attempts = 1;
};

/// Uniformly random k-junta Boolean function on a random size-k subset.
inline JuntaBooleanInstance random_k_junta_boolean(int n, int k, RandomSource& rng) {
    if (k < 1 || k > n) throw ArgumentError("random_k_junta_boolean: need 1 <= k <= n");
    std::vector<int> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coords[i] = i + 1;
    Subset t = 0;
    for (int picked = 0; picked < k; ++picked) {
        const std::size_t at =
            static_cast<std::size_t>(rng.uniform_index(coords.size()));
        t |= 1u << (coords[at] - 1);
        coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(at));
    }
    const std::vector<int> pos = set_elements(t);
    const std::size_t cells = std::size_t(1) << k;
    const std::size_t cell_size = std::size_t(1) << (n - k);
    std::vector<std::int8_t> table(std::size_t(1) << n);
    for (std::size_t z = 0; z < cells; ++z) {
        const std::int8_t v = (rng.uniform_index(2) == 0) ? 1 : -1;
        for (std::size_t w = 0; w < cell_size; ++w)
            table[detail::assemble_index(n, pos, static_cast<std::uint32_t>(z), t,
                                         static_cast<std::uint32_t>(w))] = v;
    }
    return {BooleanFunction(n, std::move(table)), t, 0.0, 1};
}

/// YES instance for the Boolean testers: a random k-junta with exactly
/// floor(eps_target 2^n) outputs flipped, re-certified by the exact oracle.
inline JuntaBooleanInstance perturbed_junta_boolean(int n, int k, double eps_target,
                                                    RandomSource& rng) {
    if (!(eps_target >= 0 && eps_target < 1))
        throw ArgumentError("perturbed_junta_boolean: eps_target must lie in [0,1)");
    JuntaBooleanInstance base = random_k_junta_boolean(n, k, rng);
    const std::size_t size = base.f.size();
    const std::size_t flips =
        static_cast<std::size_t>(eps_target * static_cast<double>(size));
    std::vector<std::size_t> order(size);
    for (std::size_t i = 0; i < size; ++i) order[i] = i;
    for (std::size_t i = 0; i < flips; ++i) {
        const std::size_t j = i + rng.uniform_index(size - i);
        std::swap(order[i], order[j]);
    }
    std::vector<std::int8_t> table = base.f.table();
    for (std::size_t i = 0; i < flips; ++i)
        table[order[i]] = static_cast<std::int8_t>(-table[order[i]]);
    BooleanFunction f(n, std::move(table));
    const BooleanJuntaDistance d = dist_to_k_junta_bool(f, k);
    return {std::move(f), base.acting_on, d.distance, base.attempts};
}

/// Certified NO instance: rejection-samples uniform truth tables.
inline JuntaBooleanInstance far_boolean_instance(int n, int k, double eps2, RandomSource& rng) {
    double max_seen = 0;
    for (int attempt = 1; attempt <= kGeneratorMaxAttempts; ++attempt) {
        std::vector<std::int8_t> table(std::size_t(1) << n);
        for (std::int8_t& v : table) v = (rng.uniform_index(2) == 0) ? 1 : -1;
        BooleanFunction f(n, std::move(table));
        const BooleanJuntaDistance d = dist_to_k_junta_bool(f, k);
        max_seen = std::max(max_seen, d.distance);
        if (d.distance >= eps2) return {std::move(f), d.witness, d.distance, attempt};
    }
    throw GenerationError("far_boolean_instance: no draw reached eps2=" + std::to_string(eps2) +
                          " (max observed distance " + std::to_string(max_seen) + ")");
}

enum class BandSign { Plus, Minus };

/// One of the four banded Hamming-weight functions on {0,1}^a used by the
/// adversarial distributions.  Outputs are assembled in {0,1} from the three
/// weight bands, then relabeled 0 -> +1, 1 -> -1.
inline BooleanFunction appendix_h(int a, double c1, BandSign sign, int bit) {
    if (a < 1 || a > kMaxBooleanVars) throw CapacityError("appendix_h: a outside [1,14]");
    if (!(c1 > 0 && c1 <= 0.1 * std::sqrt(static_cast<double>(a))))
        throw ArgumentError("appendix_h: need 0 < c1 <= 0.1 sqrt(a)");
    if (bit != 0 && bit != 1) throw ArgumentError("appendix_h: bit must be 0 or 1");
    const double mid = a / 2.0;
    std::vector<std::int8_t> table(std::size_t(1) << a);
    for (std::size_t x = 0; x < table.size(); ++x) {
        const int w = __builtin_popcountll(x);
        int value01 = 0;
        const bool above = w > mid + c1;
        const bool below = w < mid - c1;
        if (sign == BandSign::Plus) {
            // h^{(+,0)} is identically 0; h^{(+,1)} is 1 off the middle band.
            if (bit == 1 && (above || below)) value01 = 1;
        } else {
            // h^{(-,0)} marks the high band, h^{(-,1)} the low band.
            if (bit == 0 && above) value01 = 1;
            if (bit == 1 && below) value01 = 1;
        }
        table[x] = value01 == 0 ? 1 : -1;
    }
    return BooleanFunction(a, std::move(table));
}

struct AdversarialSample {
    BooleanFunction f;
    Subset action_set = 0;             // the hidden A
    std::vector<std::uint8_t> control; // hidden r over the control assignments
};

/// Draws from the hard yes/no distributions: a uniform size-a action set A, a
/// uniform control function r on the remaining variables, and the banded h
/// functions selected by r.  n = k + a.
inline AdversarialSample sample_dyes_dno(int k, int a, double c1, RandomSource& rng, bool yes) {
    const int n = k + a;
    if (n > kMaxBooleanVars) throw CapacityError("sample_dyes_dno: k + a exceeds 14 variables");
    std::vector<int> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coords[i] = i + 1;
    Subset action = 0;
    for (int picked = 0; picked < a; ++picked) {
        const std::size_t at =
            static_cast<std::size_t>(rng.uniform_index(coords.size()));
        action |= 1u << (coords[at] - 1);
        coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(at));
    }
    const Subset control_set = complement(action, n);
    std::vector<std::uint8_t> r(std::size_t(1) << k);
    for (std::uint8_t& v : r) v = static_cast<std::uint8_t>(rng.uniform_index(2));

    const BandSign sign = yes ? BandSign::Plus : BandSign::Minus;
    const BooleanFunction h0 = appendix_h(a, c1, sign, 0);
    const BooleanFunction h1 = appendix_h(a, c1, sign, 1);

    const std::vector<int> apos = set_elements(action);
    const std::vector<int> cpos = set_elements(control_set);
    std::vector<std::int8_t> table(std::size_t(1) << n);
    for (std::size_t x = 0; x < table.size(); ++x) {
        std::size_t xa = 0, xc = 0;
        for (int i : apos) xa = (xa << 1) | ((x >> index_bit(n, i)) & 1u);
        for (int i : cpos) xc = (xc << 1) | ((x >> index_bit(n, i)) & 1u);
        table[x] = r[xc] ? h1.value(xa) : h0.value(xa);
    }
    return {BooleanFunction(n, std::move(table)), action, std::move(r)};
}

}  // namespace junta

#endif
