#ifndef SPEEDSCALE_TYPES_HPP
#define SPEEDSCALE_TYPES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace speedscale {

using JobId = std::int64_t;
using Slot = std::int64_t;

/// One work request. Release and deadline sit on the integer slot grid;
/// the workload is a nonnegative real volume.
struct Job {
    JobId id = 0;
    Slot release = 0;
    Slot deadline = 0;
    double work = 0.0;

    double window() const { return static_cast<double>(deadline - release); }
    /// Density w_j / (d_j - r_j).
    double density() const { return work / window(); }
};

/// An ordered job set. Jobs are kept sorted by (release, id). If every job
/// shares one deadline the instance is flagged common-deadline.
class Instance {
public:
    Instance() = default;

    explicit Instance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
        validate_and_sort();
    }

    const std::vector<Job>& jobs() const { return jobs_; }
    std::size_t size() const { return jobs_.size(); }
    bool empty() const { return jobs_.empty(); }
    const Job& operator[](std::size_t i) const { return jobs_[i]; }

    std::optional<Slot> common_deadline() const { return common_deadline_; }

    /// Earliest release over all jobs; 0 for an empty instance.
    Slot horizon_start() const;
    /// Latest deadline over all jobs; 0 for an empty instance.
    Slot horizon_end() const;

    const Job* find(JobId id) const;

private:
    void validate_and_sort();

    std::vector<Job> jobs_;
    std::optional<Slot> common_deadline_;
};

}  // namespace speedscale

#endif
