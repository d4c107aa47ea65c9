#ifndef JUNTA_EXPERIMENT_HPP
#define JUNTA_EXPERIMENT_HPP

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "junta/generators.hpp"
#include "junta/io.hpp"
#include "junta/testers.hpp"

namespace junta {

enum class TesterKind { Alg3, Alg3Bool, Alg7, Alg7Bool, Alg8 };
enum class InstanceKind { ExactJunta, Perturbed, Far, DYes, DNo, FromFile };

inline const char* to_string(TesterKind t) {
    switch (t) {
        case TesterKind::Alg3: return "alg3";
        case TesterKind::Alg3Bool: return "alg3-bool";
        case TesterKind::Alg7: return "alg7";
        case TesterKind::Alg7Bool: return "alg7-bool";
        default: return "alg8";
    }
}
inline const char* to_string(InstanceKind c) {
    switch (c) {
        case InstanceKind::ExactJunta: return "exact-junta";
        case InstanceKind::Perturbed: return "perturbed";
        case InstanceKind::Far: return "far";
        case InstanceKind::DYes: return "dyes";
        case InstanceKind::DNo: return "dno";
        default: return "from-file";
    }
}
inline TesterKind tester_from_string(const std::string& s) {
    if (s == "alg3") return TesterKind::Alg3;
    if (s == "alg3-bool") return TesterKind::Alg3Bool;
    if (s == "alg7") return TesterKind::Alg7;
    if (s == "alg7-bool") return TesterKind::Alg7Bool;
    if (s == "alg8") return TesterKind::Alg8;
    throw ParameterError("unknown tester: " + s);
}
inline InstanceKind instance_from_string(const std::string& s) {
    if (s == "exact-junta") return InstanceKind::ExactJunta;
    if (s == "perturbed") return InstanceKind::Perturbed;
    if (s == "far") return InstanceKind::Far;
    if (s == "dyes") return InstanceKind::DYes;
    if (s == "dno") return InstanceKind::DNo;
    if (s == "from-file") return InstanceKind::FromFile;
    throw ParameterError("unknown instance class: " + s);
}

struct ExperimentConfig {
    TesterKind tester = TesterKind::Alg3;
    int n = 0;
    int k = 0;
    double eps1 = 0;
    double eps2 = 0;
    InstanceKind instance_class = InstanceKind::ExactJunta;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string output_path;
    std::int64_t budget_ceiling = kDefaultBudgetCeiling;
    std::string input_path;   // from-file instances
    int appendix_a = 0;       // dyes/dno action-set size (0: use k)
    double appendix_c1 = 0;   // dyes/dno band parameter (0: use 0.005 sqrt(k))
};

inline bool tester_is_boolean(TesterKind t) {
    return t == TesterKind::Alg3Bool || t == TesterKind::Alg7Bool;
}

/// Gap and argument validation mirroring the testers, run before any trial.
inline void validate_config(const ExperimentConfig& c) {
    if (c.k < 1 || c.k >= c.n) throw ParameterError("config: need 1 <= k < n");
    if (c.trials < 0) throw ParameterError("config: trials must be nonnegative");
    switch (c.tester) {
        case TesterKind::Alg3:
            detail::check_gap(c.eps1, c.eps2, 2.0 * std::sqrt(2.0), "config(alg3)");
            break;
        case TesterKind::Alg3Bool:
            detail::check_gap(c.eps1, c.eps2, 4.0, "config(alg3-bool)");
            break;
        case TesterKind::Alg7:
            detail::check_gap(c.eps1, c.eps2, 2.0 * std::sqrt(3.0), "config(alg7)");
            break;
        case TesterKind::Alg7Bool:
            detail::check_gap(c.eps1, c.eps2, 6.0, "config(alg7-bool)");
            break;
        case TesterKind::Alg8:
            if (!(c.eps1 > 0 && c.eps1 < c.eps2 && c.eps2 < 1))
                throw ParameterError("config(alg8): need 0 < eps1 < eps2 < 1");
            break;
    }
    const bool boolean = tester_is_boolean(c.tester);
    if ((c.instance_class == InstanceKind::DYes || c.instance_class == InstanceKind::DNo) &&
        !boolean)
        throw ParameterError("config: dyes/dno instances are Boolean-only");
    if (c.instance_class == InstanceKind::FromFile && c.input_path.empty())
        throw ParameterError("config: from-file instances need input_path");
    if (c.instance_class == InstanceKind::DYes || c.instance_class == InstanceKind::DNo) {
        const int a = c.appendix_a > 0 ? c.appendix_a : c.k;
        if (c.n != c.k + a)
            throw ParameterError("config: dyes/dno require n = k + a");
    }
}

// Expected tester answer for a trial.  FromFile instances may certify as
// NEITHER, in which case the trial is recorded but not judged.
enum class Expectation { Yes, No, None };

struct TrialRow {
    int trial = 0;
    std::uint64_t seed = 0;
    double certified_distance = 0;
    bool yes = false;
    double statistic = 0;
    QueryLedger queries;
    Expectation expected = Expectation::None;
    int generation_attempts = 1;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRow> rows;
    int judged_trials = 0;
    int successes = 0;
    double success_fraction = 0;
    double mean_fourier_calls = 0;
    double mean_influence_calls = 0;
    double mean_controlled_u_calls = 0;
    std::int64_t generation_attempts = 0;
};

namespace detail {

struct BooleanInstanceSource {
    std::vector<BooleanFunction> pool;  // from-file only
};

inline TrialRow run_boolean_trial(const ExperimentConfig& c, int trial,
                                  const std::vector<BooleanFunction>& file_pool) {
    TrialRow row;
    row.trial = trial;
    row.seed = c.seed ^ static_cast<std::uint64_t>(trial);
    RandomSource rng(row.seed);

    std::optional<BooleanFunction> f;
    switch (c.instance_class) {
        case InstanceKind::ExactJunta: {
            JuntaBooleanInstance inst = random_k_junta_boolean(c.n, c.k, rng);
            row.certified_distance = inst.distance;
            row.expected = Expectation::Yes;
            f = std::move(inst.f);
            break;
        }
        case InstanceKind::Perturbed: {
            JuntaBooleanInstance inst = perturbed_junta_boolean(c.n, c.k, c.eps1, rng);
            if (inst.distance > c.eps1)
                throw GenerationError("perturbed Boolean instance failed certification");
            row.certified_distance = inst.distance;
            row.expected = Expectation::Yes;
            f = std::move(inst.f);
            break;
        }
        case InstanceKind::Far: {
            JuntaBooleanInstance inst = far_boolean_instance(c.n, c.k, c.eps2, rng);
            row.certified_distance = inst.distance;
            row.expected = Expectation::No;
            row.generation_attempts = inst.attempts;
            f = std::move(inst.f);
            break;
        }
        case InstanceKind::DYes:
        case InstanceKind::DNo: {
            const bool yes = c.instance_class == InstanceKind::DYes;
            const int a = c.appendix_a > 0 ? c.appendix_a : c.k;
            const double c1 = c.appendix_c1 > 0
                                  ? c.appendix_c1
                                  : 0.005 * std::sqrt(static_cast<double>(c.k));
            for (int attempt = 1;; ++attempt) {
                AdversarialSample sample = sample_dyes_dno(c.k, a, c1, rng, yes);
                const Certification cert =
                    certify_instance_boolean(sample.f, c.k, c.eps1, c.eps2);
                const InstanceClass want = yes ? InstanceClass::Yes : InstanceClass::No;
                if (cert.cls == want) {
                    row.certified_distance = cert.distance;
                    row.expected = yes ? Expectation::Yes : Expectation::No;
                    row.generation_attempts = attempt;
                    f = std::move(sample.f);
                    break;
                }
                if (attempt >= kGeneratorMaxAttempts)
                    throw GenerationError("dyes/dno draw never certified after 100 attempts");
            }
            break;
        }
        case InstanceKind::FromFile: {
            if (file_pool.empty()) throw ArgumentError("from-file: no truth tables loaded");
            const BooleanFunction& g = file_pool[static_cast<std::size_t>(trial) %
                                                 file_pool.size()];
            const Certification cert = certify_instance_boolean(g, c.k, c.eps1, c.eps2);
            row.certified_distance = cert.distance;
            row.expected = cert.cls == InstanceClass::Yes  ? Expectation::Yes
                           : cert.cls == InstanceClass::No ? Expectation::No
                                                           : Expectation::None;
            f = g;
            break;
        }
    }

    const TesterVerdict v =
        c.tester == TesterKind::Alg3Bool
            ? tolerant_boolean_junta_tester(*f, c.k, c.eps1, c.eps2, rng)
            : tolerant_boolean_junta_tester_local(*f, c.k, c.eps1, c.eps2, rng);
    row.yes = v.yes;
    row.statistic = v.statistic;
    row.queries = v.queries;
    return row;
}

inline TrialRow run_unitary_trial(const ExperimentConfig& c, int trial,
                                  const std::optional<Unitary>& file_unitary) {
    TrialRow row;
    row.trial = trial;
    row.seed = c.seed ^ static_cast<std::uint64_t>(trial);
    RandomSource rng(row.seed);

    std::optional<Unitary> u;
    switch (c.instance_class) {
        case InstanceKind::ExactJunta: {
            JuntaUnitaryInstance inst = random_k_junta_unitary(c.n, c.k, rng);
            row.certified_distance = 0.0;
            row.expected = Expectation::Yes;
            u = std::move(inst.u);
            break;
        }
        case InstanceKind::Perturbed: {
            JuntaUnitaryInstance inst = perturbed_junta_unitary(c.n, c.k, c.eps1, rng);
            row.certified_distance = inst.distance;
            row.expected = Expectation::Yes;
            row.generation_attempts = inst.attempts;
            u = std::move(inst.u);
            break;
        }
        case InstanceKind::Far: {
            JuntaUnitaryInstance inst = far_unitary_instance(c.n, c.k, c.eps2, rng);
            row.certified_distance = inst.distance;
            row.expected = Expectation::No;
            row.generation_attempts = inst.attempts;
            u = std::move(inst.u);
            break;
        }
        case InstanceKind::FromFile: {
            const Certification cert =
                certify_instance_unitary(*file_unitary, c.k, c.eps1, c.eps2);
            row.certified_distance = cert.distance;
            row.expected = cert.cls == InstanceClass::Yes  ? Expectation::Yes
                           : cert.cls == InstanceClass::No ? Expectation::No
                                                           : Expectation::None;
            u = *file_unitary;
            break;
        }
        default:
            throw ParameterError("unitary testers do not take dyes/dno instances");
    }

    TesterVerdict v;
    switch (c.tester) {
        case TesterKind::Alg3: v = tolerant_junta_tester(*u, c.k, c.eps1, c.eps2, rng); break;
        case TesterKind::Alg7:
            v = tolerant_junta_tester_local(*u, c.k, c.eps1, c.eps2, rng);
            break;
        default:
            v = gapless_tolerant_junta_tester(*u, c.k, c.eps1, c.eps2, rng, c.budget_ceiling);
            break;
    }
    row.yes = v.yes;
    row.statistic = v.statistic;
    row.queries = v.queries;
    return row;
}

}  // namespace detail

inline int worker_count() {
    if (const char* env = std::getenv("JUNTA_LAB_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

inline void write_report_files(const ExperimentReport& report);

/// Runs the configured trials, each on its own derived seed, and writes the
/// CSV rows plus the JSON aggregate sidecar when output_path is set.
/// Deterministic for a fixed config regardless of the worker count.
inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentReport report;
    report.config = config;
    report.rows.resize(static_cast<std::size_t>(config.trials));

    std::vector<BooleanFunction> file_pool;
    std::optional<Unitary> file_unitary;
    if (config.instance_class == InstanceKind::FromFile) {
        if (tester_is_boolean(config.tester))
            file_pool = read_truth_tables(config.input_path);
        else
            file_unitary = read_unitary(config.input_path);
    }

    const int workers = std::min(worker_count(), std::max(1, config.trials));
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto work = [&](int slot) {
        try {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= config.trials) break;
                report.rows[static_cast<std::size_t>(t)] =
                    tester_is_boolean(config.tester)
                        ? detail::run_boolean_trial(config, t, file_pool)
                        : detail::run_unitary_trial(config, t, file_unitary);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(slot)] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (std::thread& th : pool) th.join();
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    for (const TrialRow& row : report.rows) {
        if (row.expected != Expectation::None) {
            ++report.judged_trials;
            const bool ok = (row.expected == Expectation::Yes) == row.yes;
            if (ok) ++report.successes;
        }
        report.mean_fourier_calls += static_cast<double>(row.queries.fourier_sample_calls);
        report.mean_influence_calls += static_cast<double>(row.queries.influence_sample_calls);
        report.mean_controlled_u_calls +=
            static_cast<double>(row.queries.controlled_u_applications);
        report.generation_attempts += row.generation_attempts;
    }
    if (!report.rows.empty()) {
        const double n = static_cast<double>(report.rows.size());
        report.mean_fourier_calls /= n;
        report.mean_influence_calls /= n;
        report.mean_controlled_u_calls /= n;
    }
    report.success_fraction =
        report.judged_trials > 0
            ? static_cast<double>(report.successes) / report.judged_trials
            : 0.0;

    if (!config.output_path.empty()) write_report_files(report);
    return report;
}

inline void write_report_files(const ExperimentReport& report) {
    std::ofstream csv(report.config.output_path);
    if (!csv)
        throw ArgumentError("cannot open report file: " + report.config.output_path);
    csv << "trial,seed,certified_distance,verdict,statistic,fourier_calls,influence_calls,"
           "controlled_u_calls\n";
    for (const TrialRow& row : report.rows) {
        csv << row.trial << "," << row.seed << "," << format_double(row.certified_distance)
            << "," << (row.yes ? "Yes" : "No") << "," << format_double(row.statistic) << ","
            << row.queries.fourier_sample_calls << "," << row.queries.influence_sample_calls
            << "," << row.queries.controlled_u_applications << "\n";
    }
    csv.close();

    nlohmann::ordered_json j;
    j["tester"] = to_string(report.config.tester);
    j["instance_class"] = to_string(report.config.instance_class);
    j["n"] = report.config.n;
    j["k"] = report.config.k;
    j["eps1"] = report.config.eps1;
    j["eps2"] = report.config.eps2;
    j["trials"] = static_cast<int>(report.rows.size());
    j["seed"] = report.config.seed;
    j["judged_trials"] = report.judged_trials;
    j["successes"] = report.successes;
    j["success_fraction"] = report.success_fraction;
    j["mean_fourier_calls"] = report.mean_fourier_calls;
    j["mean_influence_calls"] = report.mean_influence_calls;
    j["mean_controlled_u_calls"] = report.mean_controlled_u_calls;
    j["generation_attempts"] = report.generation_attempts;
    std::ofstream sidecar(report.config.output_path + ".json");
    if (!sidecar)
        throw ArgumentError("cannot open sidecar file: " + report.config.output_path + ".json");
    sidecar << j.dump(2) << "\n";
}

// Config file: a JSON object mirroring the ExperimentConfig field names.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("tester")) c.tester = tester_from_string(j.at("tester").get<std::string>());
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("k")) c.k = j.at("k").get<int>();
    if (j.contains("eps1")) c.eps1 = j.at("eps1").get<double>();
    if (j.contains("eps2")) c.eps2 = j.at("eps2").get<double>();
    if (j.contains("instance_class"))
        c.instance_class = instance_from_string(j.at("instance_class").get<std::string>());
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("budget_ceiling")) c.budget_ceiling = j.at("budget_ceiling").get<std::int64_t>();
    if (j.contains("input_path")) c.input_path = j.at("input_path").get<std::string>();
    if (j.contains("appendix_a")) c.appendix_a = j.at("appendix_a").get<int>();
    if (j.contains("appendix_c1")) c.appendix_c1 = j.at("appendix_c1").get<double>();
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

}  // namespace junta

#endif
