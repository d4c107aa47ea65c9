#ifndef JUNTA_EXTRACT_HPP
#define JUNTA_EXTRACT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "junta/sampling.hpp"

namespace junta {

// Sampling plan for the high-influence coordinate extractors.  epsilon and
// delta are fixed by the procedure; rounds is the derived sample count
// T = ceil((2k / (eps^2 tau^2)) ln(k^2 / (delta tau^2))).
struct ExtractorConfig {
    int k = 0;
    double tau = 0;
    double epsilon = 0.5;
    double delta = 0.01;
    std::int64_t rounds = 0;

    static ExtractorConfig make(int k, double tau) {
        if (k < 1) throw ArgumentError("ExtractorConfig: k must be positive");
        if (!(tau > 0 && tau < 1)) throw ArgumentError("ExtractorConfig: tau must lie in (0,1)");
        ExtractorConfig c;
        c.k = k;
        c.tau = tau;
        const double t = (2.0 * k / (c.epsilon * c.epsilon * tau * tau)) *
                         std::log(static_cast<double>(k) * k / (c.delta * tau * tau));
        c.rounds = static_cast<std::int64_t>(std::ceil(t));
        return c;
    }
};

namespace detail {

template <typename DrawSupport>
Subset run_extractor(int n, const ExtractorConfig& cfg, DrawSupport&& draw_support,
                     bool normalize_counts) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    for (std::int64_t round = 0; round < cfg.rounds; ++round) {
        const Subset supp = draw_support();
        if (set_size(supp) > cfg.k) continue;
        for (int i = 1; i <= n; ++i)
            if (contains(supp, i)) counts[i - 1] += 1;
    }
    // Raw-count thresholding compares e_i to (1-eps) T tau^2 / k; the local
    // variant divides by T first and compares to (1-eps) tau^2 / k.  Both
    // keep exactly the same coordinates.
    Subset s = 0;
    const double tau_term = (1.0 - cfg.epsilon) * cfg.tau * cfg.tau / cfg.k;
    for (int i = 1; i <= n; ++i) {
        const bool selected =
            normalize_counts
                ? (static_cast<double>(counts[i - 1]) / static_cast<double>(cfg.rounds) >=
                   tau_term)
                : (static_cast<double>(counts[i - 1]) >=
                   static_cast<double>(cfg.rounds) * tau_term);
        if (selected) s |= 1u << (i - 1);
    }
    return s;
}

}  // namespace detail

/// Fourier-Sample based extractor.  Returns S = {i : e_i >= (1-eps) T tau^2/k}
/// where e_i counts weight<=k samples whose support contains i.  Guarantees
/// |S| <= 2k^2/tau^2 and, with probability at least 0.99, S contains every i
/// with Inf_i^{<=k}[U] >= tau^2/k.
inline Subset coordinate_extractor(FourierSampler& sampler, int k, double tau) {
    const int n = sampler.spectrum().n();
    if (k >= n) throw ArgumentError("coordinate_extractor: need k < n");
    const ExtractorConfig cfg = ExtractorConfig::make(k, tau);
    const PauliSpectrum& spec = sampler.spectrum();
    return detail::run_extractor(
        n, cfg, [&] { return spec.support_of(sampler.draw_encoded()); }, false);
}

inline Subset coordinate_extractor(const Unitary& u, int k, double tau, RandomSource& rng,
                                   QueryLedger& ledger) {
    FourierSampler sampler(u, rng, ledger);
    return coordinate_extractor(sampler, k, tau);
}

/// Influence-Sample based extractor with the same plan, thresholding the
/// per-round frequencies e_i/T.  The containment guarantee is with respect to
/// p_i = Pr[|x| <= k, x_i != 0] under the Influence-Sample law.
inline Subset coordinate_extractor_local(InfluenceSampler& sampler, int n, int k, double tau) {
    if (k >= n) throw ArgumentError("coordinate_extractor_local: need k < n");
    const ExtractorConfig cfg = ExtractorConfig::make(k, tau);
    return detail::run_extractor(
        n, cfg, [&] { return sampler.draw_support(); }, true);
}

inline Subset coordinate_extractor_local(const Unitary& u, int k, double tau, RandomSource& rng,
                                         QueryLedger& ledger) {
    InfluenceSampler sampler(u, rng, ledger);
    return coordinate_extractor_local(sampler, u.n(), k, tau);
}

}  // namespace junta

#endif
