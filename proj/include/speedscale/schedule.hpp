#ifndef SPEEDSCALE_SCHEDULE_HPP
#define SPEEDSCALE_SCHEDULE_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "speedscale/profile.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// One allocation piece: job `job` runs on [start, end) contributing `speed`
/// to the processor speed. Slices of different jobs may overlap in time; the
/// processor speed is their pointwise sum.
struct Slice {
    double start;
    double end;
    JobId job;
    double speed;

    double volume() const { return speed * (end - start); }
};

/// A speed profile together with the per-interval job allocation that
/// realizes it. The profile is always the pointwise sum of the slices.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(std::vector<Slice> slices);

    const std::vector<Slice>& slices() const { return slices_; }
    const SpeedProfile& profile() const { return profile_; }

    double energy(double alpha) const { return speedscale::energy(profile_, alpha); }
    /// Total volume allocated to one job.
    double processed(JobId id) const;

private:
    std::vector<Slice> slices_;  // sorted by (start, job)
    SpeedProfile profile_;
};

struct FeasibilityReport {
    struct PerJob {
        JobId id;
        double required;
        double processed;
    };
    std::vector<PerJob> jobs;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Audits a schedule against an instance: every job must receive at least
/// w_j * (1 - tol) volume, and no slice may leave the job's [release,
/// deadline) window (up to a 1e-9 grace for float noise). A slice naming an
/// unknown job id is a malformed schedule and throws.
FeasibilityReport verify_feasible(const Schedule& schedule, const Instance& instance,
                                  double tol);

/// Merges schedules for pairwise-disjoint job sets into one schedule whose
/// speed is the pointwise sum of the parts. Overlapping job ids across parts
/// throw invalid-partition.
Schedule combine_schedules(std::span<const Schedule> parts);

}  // namespace speedscale

#endif
