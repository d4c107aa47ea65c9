// Command-line front end: experiment runner, instance certification, and
// Pauli-weight inspection over the file formats described in the README.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "junta/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParameter = 2;
constexpr int kExitCapacity = 3;

bool looks_like_truth_table(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        return line.find_first_not_of("+-01\r") == std::string::npos;
    }
    return false;
}

int cmd_run(const std::string& config_path, const std::string& tester,
            const std::string& instance_class, int n, int k, double eps1, double eps2,
            int trials, std::uint64_t seed, const std::string& out, std::int64_t budget,
            const std::string& input, bool have_seed, bool have_trials) {
    junta::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = junta::load_config(config_path);
    if (!tester.empty()) cfg.tester = junta::tester_from_string(tester);
    if (!instance_class.empty()) cfg.instance_class = junta::instance_from_string(instance_class);
    if (n > 0) cfg.n = n;
    if (k > 0) cfg.k = k;
    if (eps1 > 0) cfg.eps1 = eps1;
    if (eps2 > 0) cfg.eps2 = eps2;
    if (have_trials) cfg.trials = trials;
    if (have_seed) cfg.seed = seed;
    if (!out.empty()) cfg.output_path = out;
    if (budget > 0) cfg.budget_ceiling = budget;
    if (!input.empty()) cfg.input_path = input;

    const junta::ExperimentReport report = junta::run_experiment(cfg);
    std::cout << "tester=" << junta::to_string(cfg.tester)
              << " instances=" << junta::to_string(cfg.instance_class)
              << " trials=" << report.rows.size() << " judged=" << report.judged_trials
              << " successes=" << report.successes
              << " success_fraction=" << junta::format_double(report.success_fraction)
              << "\n";
    if (!cfg.output_path.empty())
        std::cout << "report: " << cfg.output_path << " (+ .json sidecar)\n";
    return kExitOk;
}

int cmd_certify(const std::string& input, int k, double eps1, double eps2) {
    if (looks_like_truth_table(input)) {
        const std::vector<junta::BooleanFunction> fns = junta::read_truth_tables(input);
        if (fns.empty()) throw junta::ArgumentError("certify: no functions in " + input);
        for (std::size_t i = 0; i < fns.size(); ++i) {
            const junta::Certification cert =
                junta::certify_instance_boolean(fns[i], k, eps1, eps2);
            std::cout << "function " << i << ": " << junta::to_string(cert.cls)
                      << " distance=" << junta::format_double(cert.distance)
                      << " witness=" << junta::subset_to_string(cert.witness) << "\n";
        }
    } else {
        const junta::Unitary u = junta::read_unitary(input);
        const junta::Certification cert = junta::certify_instance_unitary(u, k, eps1, eps2);
        std::cout << "unitary: " << junta::to_string(cert.cls)
                  << " distance=" << junta::format_double(cert.distance)
                  << " witness=" << junta::subset_to_string(cert.witness) << "\n";
    }
    return kExitOk;
}

int cmd_spectrum(const std::string& input, int top) {
    const junta::Unitary u = junta::read_unitary(input);
    const junta::PauliSpectrum spec = junta::pauli_spectrum(u);
    std::vector<std::size_t> order(spec.size());
    for (std::size_t e = 0; e < spec.size(); ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.weight_at(a) > spec.weight_at(b);
    });
    const int count = std::min<std::size_t>(static_cast<std::size_t>(top), order.size());
    for (int i = 0; i < count; ++i) {
        const std::size_t e = order[static_cast<std::size_t>(i)];
        std::cout << junta::PauliString::decode(u.n(), e).label() << " "
                  << junta::format_double(spec.weight_at(e)) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"junta-lab: tolerant k-junta testing laboratory"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a seeded experiment and write reports");
    std::string config_path, tester, instance_class, out, input;
    int n = 0, k = 0, trials = 0, top = 16;
    double eps1 = 0, eps2 = 0;
    std::uint64_t seed = 0;
    std::int64_t budget = 0;
    run->add_option("--config", config_path, "JSON config file (fields mirror the config)");
    run->add_option("--tester", tester, "alg3|alg3-bool|alg7|alg7-bool|alg8");
    run->add_option("--instances", instance_class,
                    "exact-junta|perturbed|far|dyes|dno|from-file");
    run->add_option("--n", n, "qubit / variable count");
    run->add_option("--k", k, "junta budget");
    run->add_option("--eps1", eps1, "closeness parameter");
    run->add_option("--eps2", eps2, "farness parameter");
    auto* trials_opt = run->add_option("--trials", trials, "trial count");
    auto* seed_opt = run->add_option("--seed", seed, "base seed");
    run->add_option("--out", out, "CSV report path (JSON sidecar alongside)");
    run->add_option("--budget", budget, "controlled-U budget ceiling");
    run->add_option("--input", input, "instance file for from-file runs");

    auto* certify = app.add_subcommand("certify", "exact distance classification of instances");
    std::string cert_input;
    int cert_k = 1;
    double cert_eps1 = 0.1, cert_eps2 = 0.5;
    certify->add_option("--input", cert_input, "truth-table or matrix file")->required();
    certify->add_option("--k", cert_k, "junta budget")->required();
    certify->add_option("--eps1", cert_eps1, "closeness parameter");
    certify->add_option("--eps2", cert_eps2, "farness parameter");

    auto* spectrum = app.add_subcommand("spectrum", "print the largest Pauli weights");
    std::string spec_input;
    spectrum->add_option("--input", spec_input, "matrix file")->required();
    spectrum->add_option("--top", top, "number of weights to print");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, tester, instance_class, n, k, eps1, eps2, trials, seed,
                           out, budget, input, seed_opt->count() > 0, trials_opt->count() > 0);
        if (certify->parsed()) return cmd_certify(cert_input, cert_k, cert_eps1, cert_eps2);
        if (spectrum->parsed()) return cmd_spectrum(spec_input, top);
    } catch (const junta::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const junta::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
