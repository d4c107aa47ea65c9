#ifndef JUNTA_TESTERS_HPP
#define JUNTA_TESTERS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "junta/boolean.hpp"
#include "junta/extract.hpp"

namespace junta {

inline constexpr int kMaxLocalTesterQubits = 10;
inline constexpr int kMaxWarmupSetSize = 4;
inline constexpr std::int64_t kDefaultBudgetCeiling = 10'000'000'000'000'000;  // 1e16

// Echo of the sampling plan a tester ran with.  extractor_rounds is the
// extractor's T; estimate_rounds is the tester's own M.
struct TesterParams {
    int k = 0;
    double eps1 = 0;
    double eps2 = 0;
    double delta = 0;
    double tau = 0;
    std::int64_t extractor_rounds = 0;
    std::int64_t estimate_rounds = 0;
    double yes_threshold = 0;
};

struct TesterVerdict {
    bool yes = false;
    Subset witness = 0;     // minimizing subset T
    double statistic = 0;   // min_T of the estimated quantity
    Subset extracted = 0;   // candidate set S
    QueryLedger queries;
    TesterParams params;
};

namespace detail {

// Shared skeleton of the constant-gap testers: extract S, draw M sample
// supports up front, then scan every size-k subset T of S (or T = S when S is
// smaller) for the smallest fraction of samples whose support leaves T.
template <typename DrawSupport>
TesterVerdict run_gap_tester(int n, int k, double eps1, double eps2, double delta,
                             double yes_threshold, Subset s, std::int64_t extractor_rounds,
                             DrawSupport&& draw_support, QueryLedger& ledger) {
    TesterVerdict v;
    v.extracted = s;
    v.params = {k, eps1, eps2, delta, std::sqrt(delta), extractor_rounds, 0, yes_threshold};

    const std::uint64_t subsets = binomial(set_size(s), k);
    const std::int64_t m = static_cast<std::int64_t>(
        std::ceil(std::log(200.0 * (static_cast<double>(subsets) + 1.0)) / (2.0 * delta * delta)));
    v.params.estimate_rounds = m;

    // All samples are drawn before any subset is examined; the scan below
    // only reads this vector.
    std::vector<Subset> supports(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) supports[static_cast<std::size_t>(i)] = draw_support();
    const QueryLedger after_sampling = ledger;

    const Subset all = full_set(n);
    bool have = false;
    auto consider = [&](Subset t) {
        const Subset outside = all & ~t;
        std::int64_t hits = 0;
        for (Subset supp : supports)
            if (supp & outside) ++hits;
        const double stat = static_cast<double>(hits) / static_cast<double>(m);
        if (!have || stat < v.statistic) {
            v.statistic = stat;
            v.witness = t;
            have = true;
        }
    };
    if (set_size(s) >= k) {
        for_each_combination(set_elements(s), k, consider);
    } else {
        consider(s);
    }

    if (ledger != after_sampling)
        throw std::logic_error("gap tester: sampling occurred during the subset scan");
    v.yes = v.statistic <= yes_threshold;
    v.queries = ledger;
    return v;
}

inline void check_gap(double eps1, double eps2, double factor, const char* who) {
    if (!(eps1 > 0 && eps2 < 1 && factor * eps1 < eps2))
        throw ParameterError(std::string(who) + ": need 0 < " + std::to_string(factor) +
                             "*eps1 < eps2 < 1");
}

}  // namespace detail

/// Constant-gap tolerant k-junta tester for unitaries (Fourier sampling).
/// Requires eps2 > 2 sqrt(2) eps1; accepts when some size-k subset T of the
/// extracted candidates has estimated outside influence at most
/// 2 eps1^2 + 2 delta, with delta = (eps2^2/4 - 2 eps1^2)/3.
inline TesterVerdict tolerant_junta_tester(const Unitary& u, int k, double eps1, double eps2,
                                           RandomSource& rng) {
    detail::check_gap(eps1, eps2, 2.0 * std::sqrt(2.0), "tolerant_junta_tester");
    if (k < 1 || k >= u.n()) throw ArgumentError("tolerant_junta_tester: need 1 <= k < n");
    const double delta = (eps2 * eps2 / 4.0 - 2.0 * eps1 * eps1) / 3.0;
    const double tau = std::sqrt(delta);
    QueryLedger ledger;
    FourierSampler sampler(u, rng, ledger);
    const Subset s = coordinate_extractor(sampler, k, tau);
    const std::int64_t t_rounds = ExtractorConfig::make(k, tau).rounds;
    const PauliSpectrum& spec = sampler.spectrum();
    return detail::run_gap_tester(
        u.n(), k, eps1, eps2, delta, 2.0 * eps1 * eps1 + 2.0 * delta, s, t_rounds,
        [&] { return spec.support_of(sampler.draw_encoded()); }, ledger);
}

/// Boolean variant: same pipeline on the diagonal embedding of f, with the
/// influence bounds 4 eps1 and eps2 in place of 2 eps1^2 and eps2^2/4, so
/// delta = (eps2 - 4 eps1)/3.  Requires eps2 > 4 eps1.
inline TesterVerdict tolerant_boolean_junta_tester(const BooleanFunction& f, int k, double eps1,
                                                   double eps2, RandomSource& rng) {
    detail::check_gap(eps1, eps2, 4.0, "tolerant_boolean_junta_tester");
    if (k < 1 || k >= f.n())
        throw ArgumentError("tolerant_boolean_junta_tester: need 1 <= k < n");
    const Unitary uf = embed_unitary(f);
    const double delta = (eps2 - 4.0 * eps1) / 3.0;
    const double tau = std::sqrt(delta);
    QueryLedger ledger;
    FourierSampler sampler(uf, rng, ledger);
    const Subset s = coordinate_extractor(sampler, k, tau);
    const std::int64_t t_rounds = ExtractorConfig::make(k, tau).rounds;
    const PauliSpectrum& spec = sampler.spectrum();
    return detail::run_gap_tester(
        f.n(), k, eps1, eps2, delta, 4.0 * eps1 + 2.0 * delta, s, t_rounds,
        [&] { return spec.support_of(sampler.draw_encoded()); }, ledger);
}

/// Single-qubit-operations variant for unitaries: Influence-Sample replaces
/// Fourier sampling, delta = (eps2^2/6 - 2 eps1^2)/3 and the gap requirement
/// becomes eps2 > 2 sqrt(3) eps1.
inline TesterVerdict tolerant_junta_tester_local(const Unitary& u, int k, double eps1,
                                                 double eps2, RandomSource& rng) {
    detail::check_gap(eps1, eps2, 2.0 * std::sqrt(3.0), "tolerant_junta_tester_local");
    if (k < 1 || k >= u.n()) throw ArgumentError("tolerant_junta_tester_local: need 1 <= k < n");
    if (u.n() > kMaxLocalTesterQubits)
        throw CapacityError("tolerant_junta_tester_local: n exceeds circuit-simulation cap");
    const double delta = (eps2 * eps2 / 6.0 - 2.0 * eps1 * eps1) / 3.0;
    const double tau = std::sqrt(delta);
    QueryLedger ledger;
    InfluenceSampler sampler(u, rng, ledger);
    const Subset s = coordinate_extractor_local(sampler, u.n(), k, tau);
    const std::int64_t t_rounds = ExtractorConfig::make(k, tau).rounds;
    return detail::run_gap_tester(
        u.n(), k, eps1, eps2, delta, 2.0 * eps1 * eps1 + 2.0 * delta, s, t_rounds,
        [&] { return sampler.draw_support(); }, ledger);
}

/// Boolean single-qubit-operations variant, delta = (2 eps2/3 - 4 eps1)/3,
/// gap eps2 > 6 eps1.
inline TesterVerdict tolerant_boolean_junta_tester_local(const BooleanFunction& f, int k,
                                                         double eps1, double eps2,
                                                         RandomSource& rng) {
    detail::check_gap(eps1, eps2, 6.0, "tolerant_boolean_junta_tester_local");
    if (k < 1 || k >= f.n())
        throw ArgumentError("tolerant_boolean_junta_tester_local: need 1 <= k < n");
    if (f.n() > kMaxLocalTesterQubits)
        throw CapacityError("tolerant_boolean_junta_tester_local: n exceeds circuit cap");
    const Unitary uf = embed_unitary(f);
    const double delta = (2.0 * eps2 / 3.0 - 4.0 * eps1) / 3.0;
    const double tau = std::sqrt(delta);
    QueryLedger ledger;
    InfluenceSampler sampler(uf, rng, ledger);
    const Subset s = coordinate_extractor_local(sampler, f.n(), k, tau);
    const std::int64_t t_rounds = ExtractorConfig::make(k, tau).rounds;
    return detail::run_gap_tester(
        f.n(), k, eps1, eps2, delta, 4.0 * eps1 + 2.0 * delta, s, t_rounds,
        [&] { return sampler.draw_support(); }, ledger);
}

// Sampling plan of one distance-estimator call.  shots_per_entry is per
// quadrature; every amplitude estimate books 2 * shots_per_entry controlled
// applications, for M * 4^k * 2 * shots_per_entry in total.
struct WarmupPlan {
    std::int64_t m_rounds = 0;
    double entry_precision = 0;
    double entry_failure = 0;
    std::int64_t shots_per_entry = 0;
    std::int64_t controlled_u_per_call = 0;

    static WarmupPlan make(int k, double tau, double delta) {
        if (!(tau > 0 && tau < 1) || !(delta > 0 && delta < 1))
            throw ArgumentError("WarmupPlan: tau and delta must lie in (0,1)");
        WarmupPlan p;
        p.m_rounds = static_cast<std::int64_t>(
            std::ceil(std::pow(2.0, k + 1) / (tau * tau) * std::log(4.0 / delta)));
        p.entry_precision = tau / std::pow(2.0, 0.5 * k + 1.0);
        // The failure budget is split over every one of the M * 4^k amplitude
        // estimates so the union bound covers the whole matrix.
        p.entry_failure = delta / (2.0 * static_cast<double>(p.m_rounds) * std::pow(4.0, k));
        p.shots_per_entry = hadamard_test_shots(p.entry_precision, p.entry_failure);
        const double projected = static_cast<double>(p.m_rounds) * std::pow(4.0, k) * 2.0 *
                                 static_cast<double>(p.shots_per_entry);
        p.controlled_u_per_call =
            projected < 9.0e18 ? p.m_rounds * (std::int64_t(1) << (2 * k)) * 2 * p.shots_per_entry
                               : std::numeric_limits<std::int64_t>::max();
        return p;
    }
};

/// Estimates dist(U, J_T) as sqrt(1 - ||Utilde_T||_* / 2^n), where Utilde_T
/// is assembled from Hadamard-test estimates of <i l|U|j l> over M uniformly
/// drawn assignments l to the complement of T.  Satisfies
/// |estimate - dist(U, J_T)| <= sqrt(tau) with probability at least 1 - delta.
///
/// Estimates sharing an assignment l target the same amplitude, so their shot
/// tallies are drawn as one binomial count per (l, entry, quadrature); the
/// output law is identical to shot-by-shot simulation.
inline double warmup_estimator(const Unitary& u, Subset t, double tau, double delta,
                               RandomSource& rng, QueryLedger& ledger) {
    const int n = u.n();
    const int k = set_size(t);
    if ((t & ~full_set(n)) != 0 || k == 0)
        throw ArgumentError("warmup_estimator: T must be a nonempty subset of [n]");
    if (k > kMaxWarmupSetSize)
        throw CapacityError("warmup_estimator: |T| exceeds desk-scale cap");
    const WarmupPlan plan = WarmupPlan::make(k, tau, delta);
    const std::vector<int> pos = set_elements(t);
    const Subset keep = t;
    const std::uint32_t sub_dim = 1u << k;
    const std::uint32_t rest_dim = 1u << (n - k);

    std::vector<std::int64_t> l_counts(rest_dim, 0);
    for (std::int64_t m = 0; m < plan.m_rounds; ++m)
        l_counts[rng.uniform_index(rest_dim)] += 1;

    CMatrix estimate(sub_dim, sub_dim);
    const double shots = static_cast<double>(plan.shots_per_entry);
    for (std::uint32_t i = 0; i < sub_dim; ++i)
        for (std::uint32_t j = 0; j < sub_dim; ++j) {
            double sum_re = 0, sum_im = 0;
            for (std::uint32_t l = 0; l < rest_dim; ++l) {
                const std::int64_t c = l_counts[l];
                if (c == 0) continue;
                const Complex a = u.matrix()(detail::assemble_index(n, pos, i, keep, l),
                                             detail::assemble_index(n, pos, j, keep, l));
                const double p_re = std::clamp(0.5 * (1.0 + a.real()), 0.0, 1.0);
                const double p_im = std::clamp(0.5 * (1.0 + a.imag()), 0.0, 1.0);
                const std::int64_t trials = c * plan.shots_per_entry;
                sum_re += 2.0 * static_cast<double>(rng.binomial_draw(trials, p_re)) / shots -
                          static_cast<double>(c);
                sum_im += 2.0 * static_cast<double>(rng.binomial_draw(trials, p_im)) / shots -
                          static_cast<double>(c);
            }
            const double scale =
                static_cast<double>(rest_dim) / static_cast<double>(plan.m_rounds);
            estimate(i, j) = Complex(sum_re * scale, sum_im * scale);
        }
    ledger.controlled_u_applications += plan.controlled_u_per_call;

    // Sampling noise can push the norm past 2^n; the radicand is floored.
    const double radicand = 1.0 - nuclear_norm(estimate) / static_cast<double>(u.dim());
    return std::sqrt(std::max(0.0, radicand));
}

// Parameter block of the arbitrary-gap tester.
struct GaplessConfig {
    double eps = 0;          // eps2 - eps1
    double tau = 0;          // eps^2 / 16
    double delta = 0.01;
    double delta_prime = 0;  // delta / C(|S|,k)
    std::int64_t warmup_calls = 0;
    WarmupPlan plan;
    std::int64_t projected_controlled_u = 0;
};

/// Arbitrary-gap tolerant k-junta tester: extracts candidates with tau =
/// (eps2-eps1)^2/16, estimates dist(U, J_T) for every size-k subset T of the
/// candidate set, and accepts when the minimum is at most eps1 + eps/2.
/// Succeeds with probability at least 0.98 on both sides.  Projected
/// controlled-U cost above budget_ceiling aborts with a cost report before
/// any estimator runs.
inline TesterVerdict gapless_tolerant_junta_tester(
    const Unitary& u, int k, double eps1, double eps2, RandomSource& rng,
    std::int64_t budget_ceiling = kDefaultBudgetCeiling) {
    if (!(eps1 > 0 && eps1 < eps2 && eps2 < 1))
        throw ParameterError("gapless_tolerant_junta_tester: need 0 < eps1 < eps2 < 1");
    if (k < 1 || k >= u.n()) throw ArgumentError("gapless_tolerant_junta_tester: need 1 <= k < n");
    if (k > 3 || u.n() > 6)
        throw CapacityError("gapless_tolerant_junta_tester: desk-scale cap is k <= 3, n <= 6");

    GaplessConfig cfg;
    cfg.eps = eps2 - eps1;
    cfg.tau = cfg.eps * cfg.eps / 16.0;

    // A single estimator call at failure budget delta is a lower bound on the
    // final cost (the per-call budget only shrinks once |S| is known), so a
    // blown ceiling can be reported before any sampling.
    const WarmupPlan floor_plan = WarmupPlan::make(k, cfg.tau, cfg.delta);
    if (floor_plan.controlled_u_per_call > budget_ceiling)
        throw CapacityError(
            "gapless_tolerant_junta_tester: projected controlled-U applications exceed "
            "budget ceiling " +
            std::to_string(budget_ceiling) + " (at least " +
            std::to_string(floor_plan.controlled_u_per_call) + " for one estimator call)");

    QueryLedger ledger;
    FourierSampler sampler(u, rng, ledger);
    Subset s = coordinate_extractor(sampler, k, cfg.tau);
    // A candidate set smaller than k is padded with the smallest unused
    // coordinates; extra coordinates never increase the distance.
    for (int i = 1; set_size(s) < k && i <= u.n(); ++i) s |= 1u << (i - 1);

    cfg.warmup_calls = static_cast<std::int64_t>(binomial(set_size(s), k));
    cfg.delta_prime = cfg.delta / static_cast<double>(cfg.warmup_calls);
    cfg.plan = WarmupPlan::make(k, cfg.tau, cfg.delta_prime);
    cfg.projected_controlled_u = cfg.warmup_calls * cfg.plan.controlled_u_per_call;
    if (cfg.projected_controlled_u > budget_ceiling)
        throw CapacityError(
            "gapless_tolerant_junta_tester: projected controlled-U applications " +
            std::to_string(cfg.projected_controlled_u) + " exceed budget ceiling " +
            std::to_string(budget_ceiling));

    TesterVerdict v;
    v.extracted = s;
    v.params = {k,       eps1, eps2, cfg.delta, cfg.tau, ExtractorConfig::make(k, cfg.tau).rounds,
                cfg.plan.m_rounds, eps1 + cfg.eps / 2.0};
    bool have = false;
    for_each_combination(set_elements(s), k, [&](Subset t) {
        const double d = warmup_estimator(u, t, cfg.tau, cfg.delta_prime, rng, ledger);
        if (!have || d < v.statistic) {
            v.statistic = d;
            v.witness = t;
            have = true;
        }
    });
    v.yes = v.statistic <= v.params.yes_threshold;
    v.queries = ledger;
    return v;
}

}  // namespace junta

#endif
