#include "speedscale/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "speedscale/baselines.hpp"
#include "speedscale/swp.hpp"
#include "speedscale/yds.hpp"

namespace speedscale {

void ExperimentConfig::validate() const {
    if (alpha <= 1.0) throw std::invalid_argument("invalid-parameter: alpha must exceed 1");
    if (q < 1.0) throw std::invalid_argument("invalid-parameter: q must be >= 1");
    if (qoa_step <= 0.0 || qoa_step > 1.0)
        throw std::invalid_argument("invalid-parameter: step must lie in (0, 1]");
    if (lambda_grid.empty() || mu_grid.empty() || stddev_grid.empty())
        throw std::invalid_argument("invalid-parameter: parameter grids must be nonempty");
    for (double l : lambda_grid)
        if (l < 0.0 || l >= 0.5)
            throw std::invalid_argument("invalid-parameter: lambda must lie in [0, 1/2)");
    for (double m : mu_grid)
        if (m < 0.0 || m > 1.0)
            throw std::invalid_argument("invalid-parameter: mu must lie in [0, 1]");
    for (double s : stddev_grid)
        if (s < 0.0) throw std::invalid_argument("invalid-parameter: stddev must be >= 0");
    if (window <= 0) throw std::invalid_argument("invalid-parameter: window must be positive");
}

namespace {

void audit_or_abort(const Schedule& schedule, const Instance& instance, double tol,
                    const std::string& what) {
    FeasibilityReport report = verify_feasible(schedule, instance, tol);
    if (!report.ok())
        throw std::runtime_error("experiment abort: " + what + " produced an infeasible "
                                 "schedule: " + report.violations.front());
}

}  // namespace

Report run_experiment(const Instance& instance, const ExperimentConfig& config) {
    config.validate();
    Report report;
    if (instance.empty()) return report;

    Schedule opt = yds(instance);
    audit_or_abort(opt, instance, 1e-9, "yds");
    double e_opt = opt.energy(config.alpha);
    auto ratio_of = [e_opt](double e) { return e_opt > 0.0 ? e / e_opt : 1.0; };

    Schedule avr_schedule = avr(instance);
    audit_or_abort(avr_schedule, instance, 1e-9, "avr");
    double e_avr = avr_schedule.energy(config.alpha);

    Schedule qoa_schedule = qoa(instance, config.q, config.qoa_step);
    audit_or_abort(qoa_schedule, instance, 1e-4, "qoa");
    double e_qoa = qoa_schedule.energy(config.alpha);

    std::vector<std::pair<JobId, double>> workloads;
    workloads.reserve(instance.size());
    for (const Job& j : instance.jobs()) workloads.emplace_back(j.id, j.work);

    for (double stddev : config.stddev_grid) {
        PredictedInstance preds = gen_predictions(instance, stddev, config.seed);
        double eta = max_norm_error(instance, preds);

        report.rows.push_back(
            {"yds", 0.0, 0.0, stddev, config.seed, eta, e_opt, ratio_of(e_opt), true});
        report.rows.push_back(
            {"avr", 0.0, 0.0, stddev, config.seed, eta, e_avr, ratio_of(e_avr), true});
        report.rows.push_back(
            {"qoa", 0.0, 0.0, stddev, config.seed, eta, e_qoa, ratio_of(e_qoa), true});

        for (double lambda : config.lambda_grid) {
            SlotRuns runs = swp_slot_runs(shrink(preds, lambda), workloads);
            for (double mu : config.mu_grid) {
                Schedule sched = swp_run_online(instance, swp_preprocess(runs, mu));
                audit_or_abort(sched, instance, 1e-6, "swp");
                double e = sched.energy(config.alpha);
                report.rows.push_back({"swp", lambda, mu, stddev, config.seed, eta, e,
                                       ratio_of(e), true});
            }
        }
    }

    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ReportRow& a, const ReportRow& b) {
                         if (a.algo != b.algo) return a.algo < b.algo;
                         if (a.lambda != b.lambda) return a.lambda < b.lambda;
                         if (a.mu != b.mu) return a.mu < b.mu;
                         return a.stddev < b.stddev;
                     });
    return report;
}

void sweep_to_csv(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("io-error: cannot write " + path);
    out << "algo,lambda,mu,stddev,seed,eta,energy,ratio,feasible\n";
    char buf[256];
    for (const ReportRow& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%g,%g,%g,%llu,%.10g,%.10g,%.10g,%d\n",
                      r.algo.c_str(), r.lambda, r.mu, r.stddev,
                      static_cast<unsigned long long>(r.seed), r.eta, r.energy, r.ratio,
                      r.feasible ? 1 : 0);
        out << buf;
    }
    if (!out) throw std::runtime_error("io-error: failed writing " + path);
}

namespace {

std::vector<double> parse_grid(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::runtime_error("parse-error: config key " + key + ": bad number '" +
                                     item + "'");
        }
    }
    if (out.empty())
        throw std::runtime_error("parse-error: config key " + key + " has no values");
    return out;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io-error: cannot open " + path);
    ExperimentConfig config;
    bool q_given = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "alpha")
            config.alpha = std::stod(value);
        else if (key == "q") {
            config.q = std::stod(value);
            q_given = true;
        } else if (key == "lambda_grid")
            config.lambda_grid = parse_grid(value, key);
        else if (key == "mu_grid")
            config.mu_grid = parse_grid(value, key);
        else if (key == "stddev_grid")
            config.stddev_grid = parse_grid(value, key);
        else if (key == "seed")
            config.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "job_limit")
            config.job_limit = static_cast<std::size_t>(std::stoull(value));
        else if (key == "step")
            config.qoa_step = std::stod(value);
        else if (key == "jobs")
            config.jobs_path = value;
        else if (key == "window")
            config.window = static_cast<Slot>(std::stoll(value));
        else if (key == "work_scale")
            config.work_scale = std::stod(value);
        else
            throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    }
    if (!q_given) config.q = 2.0 - 1.0 / config.alpha;
    return config;
}

}  // namespace speedscale
