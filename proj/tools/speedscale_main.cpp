#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "speedscale/baselines.hpp"
#include "speedscale/cdswp.hpp"
#include "speedscale/experiment.hpp"
#include "speedscale/swp.hpp"
#include "speedscale/trace.hpp"
#include "speedscale/yds.hpp"

namespace {

using namespace speedscale;

struct RunOptions {
    std::string algo;
    std::string jobs_path;
    std::string preds_path;
    std::string out_path;
    double alpha = 3.0;
    double q = 0.0;  // 0: derive 2 - 1/alpha
    double lambda = 0.0;
    double mu = 0.5;
    double step = 1.0 / 256.0;
    double stddev = 0.05;
    std::uint64_t seed = 1;
    Slot window = 100;
    double work_scale = 0.0;
    std::size_t limit = 1000;
};

double feasibility_tol(const std::string& algo) {
    if (algo == "qoa" || algo == "cdswp") return 1e-4;  // grid error
    if (algo == "swp") return 1e-6;
    return 1e-9;
}

int do_run(const RunOptions& opt) {
    Instance instance = ingest_http_trace(opt.jobs_path, opt.window, opt.work_scale, opt.limit);
    if (instance.empty()) {
        std::cerr << "speedscale: no jobs in " << opt.jobs_path << "\n";
        return 1;
    }
    double q = opt.q > 0.0 ? opt.q : qoa_default_q(opt.alpha);

    PredictedInstance preds;
    bool needs_preds = opt.algo == "swp" || opt.algo == "cdswp";
    if (needs_preds) {
        if (!opt.preds_path.empty())
            preds = read_prediction_csv(opt.preds_path);
        else if (opt.algo == "cdswp" && instance.common_deadline())
            preds = gen_common_deadline_predictions(instance, opt.stddev, opt.seed);
        else
            preds = gen_predictions(instance, opt.stddev, opt.seed);
    }

    if (opt.algo == "swp" && opt.mu == 0.0)
        std::cerr << "speedscale: warning: mu = 0 follows the prediction only; "
                     "the worst-case guarantee is void\n";

    Schedule schedule;
    if (opt.algo == "yds")
        schedule = yds(instance);
    else if (opt.algo == "avr")
        schedule = avr(instance);
    else if (opt.algo == "oa")
        schedule = oa(instance);
    else if (opt.algo == "qoa")
        schedule = qoa(instance, q, opt.step);
    else if (opt.algo == "swp")
        schedule = swp_run(instance, preds, opt.lambda, opt.mu);
    else if (opt.algo == "cdswp")
        schedule = cdswp_run(instance, preds, opt.lambda, q, opt.step);
    else {
        std::cerr << "speedscale: unknown algorithm '" << opt.algo << "'\n";
        return 1;
    }

    FeasibilityReport audit = verify_feasible(schedule, instance, feasibility_tol(opt.algo));
    double e = schedule.energy(opt.alpha);
    double e_opt = opt.algo == "yds" ? e : yds(instance).energy(opt.alpha);
    double ratio = e_opt > 0.0 ? e / e_opt : 1.0;
    double eta = needs_preds ? max_norm_error(instance, preds) : 0.0;

    Report report;
    report.rows.push_back({opt.algo, opt.lambda, opt.mu, opt.stddev, opt.seed, eta, e, ratio,
                           audit.ok()});
    sweep_to_csv(report, opt.out_path);

    std::printf("%s: jobs=%zu energy=%.10g ratio=%.6f feasible=%s\n", opt.algo.c_str(),
                instance.size(), e, ratio, audit.ok() ? "yes" : "no");
    if (!audit.ok()) {
        for (const std::string& v : audit.violations) std::cerr << "  violation: " << v << "\n";
        return 2;
    }
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_path) {
    ExperimentConfig config = parse_config_file(config_path);
    if (config.jobs_path.empty()) {
        std::cerr << "speedscale: config is missing jobs=<path>\n";
        return 1;
    }
    Instance instance = ingest_http_trace(config.jobs_path, config.window, config.work_scale,
                                          config.job_limit);
    Report report = run_experiment(instance, config);
    sweep_to_csv(report, out_path);
    std::printf("sweep: jobs=%zu rows=%zu -> %s\n", instance.size(), report.rows.size(),
                out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deadline speed-scaling algorithms with release/deadline predictions"};
    app.require_subcommand(1);

    RunOptions opt;
    CLI::App* run = app.add_subcommand("run", "run one algorithm over a job file");
    run->add_option("--algo", opt.algo, "yds|avr|oa|qoa|swp|cdswp")->required();
    run->add_option("--jobs", opt.jobs_path, "job CSV or EPA-style HTTP log")->required();
    run->add_option("--preds", opt.preds_path, "prediction CSV (id,p,q)");
    run->add_option("--alpha", opt.alpha, "power exponent");
    run->add_option("--q", opt.q, "qOA speed factor (default 2 - 1/alpha)");
    run->add_option("--lambda", opt.lambda, "shrink confidence");
    run->add_option("--mu", opt.mu, "right-part width");
    run->add_option("--step", opt.step, "qOA grid step");
    run->add_option("--stddev", opt.stddev, "noise for generated predictions");
    run->add_option("--seed", opt.seed, "prediction seed");
    run->add_option("--window", opt.window, "deadline window for HTTP traces");
    run->add_option("--work-scale", opt.work_scale, "bytes-to-work factor (<=0: auto)");
    run->add_option("--limit", opt.limit, "job limit for HTTP traces");
    run->add_option("--out", opt.out_path, "report CSV path")->required();

    std::string config_path, sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep from a config file");
    sweep->add_option("--config", config_path, "key=value config file")->required();
    sweep->add_option("--out", sweep_out, "report CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(opt);
        return do_sweep(config_path, sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "speedscale: " << e.what() << "\n";
        return 1;
    }
}
