#ifndef SPEEDSCALE_EXPERIMENT_HPP
#define SPEEDSCALE_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "speedscale/types.hpp"

namespace speedscale {

struct ExperimentConfig {
    double alpha = 3.0;
    double q = 2.0 - 1.0 / 3.0;
    std::vector<double> lambda_grid{0.0, 0.1, 0.2, 0.3};
    std::vector<double> mu_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> stddev_grid{0.01, 0.05, 0.1};
    std::uint64_t seed = 1;
    std::size_t job_limit = 1000;
    double qoa_step = 1.0 / 256.0;
    // trace ingestion
    std::string jobs_path;
    Slot window = 100;
    double work_scale = 0.0;  // <= 0: auto (mean density ~ 1)

    void validate() const;
};

struct ReportRow {
    std::string algo;
    double lambda = 0.0;
    double mu = 0.0;
    double stddev = 0.0;
    std::uint64_t seed = 0;
    double eta = 0.0;
    double energy = 0.0;
    double ratio = 0.0;
    bool feasible = false;
};

struct Report {
    std::vector<ReportRow> rows;
};

/// Runs the sweep: for every (stddev, lambda, mu) cell generate predictions,
/// run SwP, audit the schedule, and record energy and ratio to the offline
/// optimum; yds/avr/qoa run once and are reported per prediction set. Any
/// infeasible schedule aborts with a diagnostic. Deterministic per seed.
Report run_experiment(const Instance& instance, const ExperimentConfig& config);

/// Report CSV: header `algo,lambda,mu,stddev,seed,eta,energy,ratio,feasible`,
/// rows ordered by (algo, lambda, mu, stddev).
void sweep_to_csv(const Report& report, const std::string& path);

/// Flat key=value config file; '#' starts a comment. Grid-valued keys take
/// comma-separated lists.
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace speedscale

#endif
