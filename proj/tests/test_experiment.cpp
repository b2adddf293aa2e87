#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "speedscale/experiment.hpp"
#include "testutil.hpp"

using namespace speedscale;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.lambda_grid = {0.0, 0.2};
    config.mu_grid = {0.5, 1.0};
    config.stddev_grid = {0.05};
    config.seed = 9;
    return config;
}

}  // namespace

TEST_CASE("a single job reports a yds ratio of exactly one") {
    Instance inst({{1, 0, 4, 2.0}});
    Report report = run_experiment(inst, tiny_config());
    bool seen = false;
    for (const ReportRow& r : report.rows)
        if (r.algo == "yds") {
            CHECK(r.ratio == 1.0);
            CHECK(r.feasible);
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("row counts follow the grids") {
    std::mt19937_64 eng(163);
    Instance inst = testutil::random_instance(eng, 6, 12, 3.0);
    ExperimentConfig config;
    config.lambda_grid = {0.0, 0.1, 0.2, 0.3};
    config.mu_grid = {0.2, 0.5, 0.8};
    config.stddev_grid = {0.01, 0.1};
    Report report = run_experiment(inst, config);
    // 4 * 3 * 2 swp rows plus 3 baseline rows per prediction set
    CHECK(report.rows.size() == 4 * 3 * 2 + 3 * 2);
}

TEST_CASE("no algorithm beats the offline optimum") {
    std::mt19937_64 eng(167);
    for (int round = 0; round < 5; ++round) {
        Instance inst = testutil::random_instance(eng, 10, 16, 4.0);
        Report report = run_experiment(inst, tiny_config());
        for (const ReportRow& r : report.rows) {
            CHECK(r.ratio >= 1.0 - 1e-6);
            CHECK(r.feasible);
        }
    }
}

TEST_CASE("identical config and seed give byte-identical csv files") {
    std::mt19937_64 eng(173);
    Instance inst = testutil::random_instance(eng, 8, 14, 3.0);
    ExperimentConfig config = tiny_config();
    sweep_to_csv(run_experiment(inst, config), "sweep_a.csv");
    sweep_to_csv(run_experiment(inst, config), "sweep_b.csv");
    CHECK(slurp("sweep_a.csv") == slurp("sweep_b.csv"));
    std::remove("sweep_a.csv");
    std::remove("sweep_b.csv");
}

TEST_CASE("an empty report is just the header") {
    sweep_to_csv(Report{}, "sweep_empty.csv");
    CHECK(slurp("sweep_empty.csv") == "algo,lambda,mu,stddev,seed,eta,energy,ratio,feasible\n");
    std::remove("sweep_empty.csv");
}

TEST_CASE("rows are ordered by algo, lambda, mu, stddev") {
    std::mt19937_64 eng(179);
    Instance inst = testutil::random_instance(eng, 6, 12, 3.0);
    Report report = run_experiment(inst, tiny_config());
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const ReportRow &a = report.rows[i - 1], &b = report.rows[i];
        auto key = [](const ReportRow& r) {
            return std::make_tuple(r.algo, r.lambda, r.mu, r.stddev);
        };
        CHECK(key(a) <= key(b));
    }
}

TEST_CASE("config files parse into grids and scalars") {
    {
        std::ofstream out("exp_config.txt");
        out << "# sweep configuration\n"
               "alpha=2.5\n"
               "lambda_grid=0,0.25\n"
               "mu_grid=0.5,1\n"
               "stddev_grid=0.05\n"
               "seed=42\n"
               "job_limit=50\n"
               "step=0.0078125\n"
               "jobs=trace.log\n"
               "window=20\n"
               "work_scale=0.5\n";
    }
    ExperimentConfig config = parse_config_file("exp_config.txt");
    CHECK(config.alpha == doctest::Approx(2.5));
    CHECK(config.q == doctest::Approx(2.0 - 1.0 / 2.5));  // derived from alpha
    CHECK(config.lambda_grid == std::vector<double>{0.0, 0.25});
    CHECK(config.mu_grid == std::vector<double>{0.5, 1.0});
    CHECK(config.seed == 42);
    CHECK(config.job_limit == 50);
    CHECK(config.jobs_path == "trace.log");
    CHECK(config.window == 20);
    std::remove("exp_config.txt");
}

TEST_CASE("unknown config keys are rejected") {
    {
        std::ofstream out("exp_bad.txt");
        out << "alhpa=3\n";
    }
    CHECK_THROWS_AS(parse_config_file("exp_bad.txt"), std::runtime_error);
    std::remove("exp_bad.txt");
}

TEST_CASE("invalid grids fail validation") {
    ExperimentConfig config = tiny_config();
    config.lambda_grid = {0.6};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = tiny_config();
    config.mu_grid.clear();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = tiny_config();
    config.alpha = 1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
