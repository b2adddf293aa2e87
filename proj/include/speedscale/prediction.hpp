#ifndef SPEEDSCALE_PREDICTION_HPP
#define SPEEDSCALE_PREDICTION_HPP

#include <cstdint>
#include <vector>

#include "speedscale/types.hpp"

namespace speedscale {

struct JobPrediction {
    JobId id;
    Slot p;  // predicted release
    Slot q;  // predicted deadline
};

/// Per-job release/deadline predictions on the integer slot grid. For
/// common-deadline instances q is pinned to the shared deadline and only p
/// carries information.
class PredictedInstance {
public:
    PredictedInstance() = default;
    explicit PredictedInstance(std::vector<JobPrediction> preds);

    const std::vector<JobPrediction>& entries() const { return preds_; }
    std::size_t size() const { return preds_.size(); }
    const JobPrediction* find(JobId id) const;

private:
    std::vector<JobPrediction> preds_;  // sorted by id
};

struct ShrunkJobPrediction {
    JobId id;
    Slot p;  // floor(p + lambda (q - p))
    Slot q;  // ceil(q - lambda (q - p))
};

/// Predictions with each window contracted by lambda per side.
class ShrunkPrediction {
public:
    ShrunkPrediction() = default;
    ShrunkPrediction(double lambda, std::vector<ShrunkJobPrediction> preds);

    double lambda() const { return lambda_; }
    const std::vector<ShrunkJobPrediction>& entries() const { return preds_; }
    const ShrunkJobPrediction* find(JobId id) const;

private:
    double lambda_ = 0.0;
    std::vector<ShrunkJobPrediction> preds_;  // sorted by id
};

/// Prediction error eta_i = max(|p - r|, |q - d|) / (q - p). With q = d this
/// reduces to the common-deadline form |p - r| / (d - p). Throws on p == q.
double job_error(const Job& job, Slot p, Slot q);

/// max_i eta_i over the instance. Every job needs a prediction.
double max_norm_error(const Instance& instance, const PredictedInstance& preds);

/// Applies the floor/ceil shrink formulas for lambda in [0, 1/2).
ShrunkPrediction shrink(const PredictedInstance& preds, double lambda);

/// Shrunk release for a single prediction; accepts lambda in [0, 1/2].
Slot shrunk_release(Slot p, Slot q, double lambda);
Slot shrunk_deadline(Slot p, Slot q, double lambda);

/// Gaussian predictions as in the experiments: p = round(r + N(0, stddev) *
/// window), q likewise for the deadline, q clamped to at least p + 1.
/// Per-job random streams keyed by (seed, id), so adding jobs never perturbs
/// earlier samples.
PredictedInstance gen_predictions(const Instance& instance, double stddev,
                                  std::uint64_t seed);

/// Common-deadline variant: only the release is perturbed (first draw of the
/// same per-job stream) and q is pinned to the shared deadline.
PredictedInstance gen_common_deadline_predictions(const Instance& instance, double stddev,
                                                  std::uint64_t seed);

}  // namespace speedscale

#endif
