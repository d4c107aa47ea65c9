#ifndef JUNTA_TESTS_SUPPORT_HPP
#define JUNTA_TESTS_SUPPORT_HPP

// Exhaustive inequality checks shared by the unit tests and the acceptance
// suite.  Each helper returns the worst violation (positive means the
// inequality failed by that margin), so callers assert <= tolerance.

#include <algorithm>
#include <vector>

#include "junta/pauli.hpp"

namespace testsupport {

using namespace junta;

inline std::vector<Subset> all_subsets(int n) {
    std::vector<Subset> out;
    for (Subset s = 0; s <= full_set(n); ++s) out.push_back(s);
    return out;
}

// Influence comparison across a high-influence restriction: for T with
// |T| <= k and any S containing every i in T with Inf_i^{<=k} >= delta/k,
// Inf over the complement of S exceeds Inf over the complement of T by at
// most delta.
inline double influence_approx_violation(const PauliSpectrum& spec, int k, double delta) {
    const int n = spec.n();
    double worst = -1e300;
    for (Subset t : all_subsets(n)) {
        if (set_size(t) > k) continue;
        Subset core = 0;
        for (int i : set_elements(t))
            if (degree_k_influence(spec, i, k) >= delta / k) core |= 1u << (i - 1);
        const double rhs = influence_set(spec, complement(t, n)) + delta;
        for (Subset s : all_subsets(n)) {
            if ((s & core) != core) continue;
            const double lhs = influence_set(spec, complement(s, n));
            worst = std::max(worst, lhs - rhs);
        }
    }
    return worst;
}

// Adding one coordinate to a large set costs at most its degree-k influence.
inline double influence_additivity_violation(const PauliSpectrum& spec, int k) {
    const int n = spec.n();
    double worst = -1e300;
    for (Subset t : all_subsets(n)) {
        if (set_size(t) < n - k) continue;
        for (int i = 1; i <= n; ++i) {
            if (contains(t, i)) continue;
            const double lhs = influence_set(spec, t | (1u << (i - 1)));
            const double rhs =
                influence_set(spec, t) + degree_k_influence(spec, i, k);
            worst = std::max(worst, lhs - rhs);
        }
    }
    return worst;
}

// Junta distance under restriction to the high-influence part of T.
inline double restriction_distance_violation(const Unitary& u, const PauliSpectrum& spec,
                                             int k, double tau) {
    const int n = u.n();
    double worst = -1e300;
    for (Subset t : all_subsets(n)) {
        if (set_size(t) != k) continue;
        Subset core = 0;
        for (int i : set_elements(t))
            if (degree_k_influence(spec, i, k) >= tau * tau / k) core |= 1u << (i - 1);
        const double rhs = dist_to_junta_on(u, t) + std::sqrt(tau);
        for (Subset s : all_subsets(n)) {
            if ((s & core) != core) continue;
            worst = std::max(worst, dist_to_junta_on(u, s) - rhs);
        }
    }
    return worst;
}

// Candidate-set reduction: restricting the k-junta search to any superset of
// the global high-influence coordinates costs at most sqrt(tau).
inline double candidate_reduction_violation(const Unitary& u, const PauliSpectrum& spec,
                                            int k, double tau) {
    const int n = u.n();
    Subset core = 0;
    for (int i = 1; i <= n; ++i)
        if (degree_k_influence(spec, i, k) >= tau * tau / k) core |= 1u << (i - 1);
    const double rhs = dist_to_k_junta(u, k).distance + std::sqrt(tau);
    double worst = -1e300;
    for (Subset s : all_subsets(n)) {
        if ((s & core) != core) continue;
        const double lhs = dist_to_k_junta(u, k, s).distance;
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

}  // namespace testsupport

#endif
