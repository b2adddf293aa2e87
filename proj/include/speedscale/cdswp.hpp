#ifndef SPEEDSCALE_CDSWP_HPP
#define SPEEDSCALE_CDSWP_HPP

#include <optional>
#include <vector>

#include "speedscale/prediction.hpp"
#include "speedscale/schedule.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// The replanning instance used in follow-the-prediction mode: one aggregate
/// job (id 0) holding all unfinished released work at `now`, plus every
/// unreleased job at its shrunk predicted release. All deadlines are `d`.
/// Pending jobs get ids 1, 2, ... in the given order.
Instance build_ftp_instance(double released_residual, Slot now,
                            const std::vector<std::pair<Slot, double>>& pending, Slot d);

/// Outcome of a CDSwP run. In follow-the-prediction mode only `schedule`
/// (== ftp_part) is populated; after the single switch to recovery the
/// schedule is the merge of the frozen prediction-mode part and the live qOA
/// part, and `switch_index` names the first job (in release order) whose
/// error exceeded lambda.
struct CdswpResult {
    Schedule schedule;
    Schedule ftp_part;
    Schedule qoa_part;
    std::optional<std::size_t> switch_index;
};

/// CDSwP(lambda): follow the prediction while each arriving job's error
/// stays within lambda; on the first arrival with error above lambda, freeze
/// the last prediction-mode profile and add a live qOA run over the
/// remaining jobs. Requires a common-deadline instance. If predictions do
/// not cover the job set, the prediction is treated as inadequate and the
/// whole instance is handed to qOA.
CdswpResult cdswp_run_detailed(const Instance& instance, const PredictedInstance& preds,
                               double lambda, double q, double step);

Schedule cdswp_run(const Instance& instance, const PredictedInstance& preds, double lambda,
                   double q, double step);

}  // namespace speedscale

#endif
