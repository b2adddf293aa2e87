#ifndef SPEEDSCALE_TRACE_HPP
#define SPEEDSCALE_TRACE_HPP

#include <cstddef>
#include <string>

#include "speedscale/prediction.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// Job CSV: header `id,release,deadline,work`, one row per job, LF endings.
Instance read_job_csv(const std::string& path);
void write_job_csv(const Instance& instance, const std::string& path);

/// Prediction CSV: header `id,p,q`, integers.
PredictedInstance read_prediction_csv(const std::string& path);
void write_prediction_csv(const PredictedInstance& preds, const std::string& path);

/// Loads jobs from either a job CSV (detected by its header) or an EPA-style
/// HTTP log with lines `host [timestamp] "request" status bytes`. Each
/// request becomes a job released at its timestamp second (rebased so the
/// first request sits at 0) with work = bytes * work_scale and deadline =
/// release + window. work_scale <= 0 picks the scale that makes the mean
/// density 1. Stops after job_limit requests.
Instance ingest_http_trace(const std::string& path, Slot window, double work_scale,
                           std::size_t job_limit);

}  // namespace speedscale

#endif
