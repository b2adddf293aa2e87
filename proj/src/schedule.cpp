#include "speedscale/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace speedscale {

Schedule::Schedule(std::vector<Slice> slices) {
    std::vector<SpeedProfile::Segment> pieces;
    pieces.reserve(slices.size());
    std::vector<Slice> kept;
    kept.reserve(slices.size());
    for (const Slice& s : slices) {
        if (s.end < s.start)
            throw std::invalid_argument("malformed-schedule: slice with negative length");
        if (s.speed < 0.0)
            throw std::invalid_argument("malformed-schedule: negative slice speed");
        if (s.end == s.start || s.speed == 0.0) continue;
        kept.push_back(s);
        pieces.push_back({s.start, s.end, s.speed});
    }
    std::sort(kept.begin(), kept.end(), [](const Slice& a, const Slice& b) {
        return a.start != b.start ? a.start < b.start : a.job < b.job;
    });
    slices_ = std::move(kept);
    profile_ = SpeedProfile::from_segments(std::move(pieces));
}

double Schedule::processed(JobId id) const {
    double total = 0.0;
    for (const Slice& s : slices_)
        if (s.job == id) total += s.volume();
    return total;
}

FeasibilityReport verify_feasible(const Schedule& schedule, const Instance& instance,
                                  double tol) {
    if (tol < 0.0) throw std::invalid_argument("invalid-parameter: tol must be >= 0");
    constexpr double kWindowGrace = 1e-9;

    std::unordered_map<JobId, const Job*> by_id;
    for (const Job& j : instance.jobs()) by_id.emplace(j.id, &j);

    FeasibilityReport report;
    std::unordered_map<JobId, double> volume;
    for (const Slice& s : schedule.slices()) {
        auto it = by_id.find(s.job);
        if (it == by_id.end())
            throw std::invalid_argument("malformed-schedule: slice references unknown job id " +
                                        std::to_string(s.job));
        volume[s.job] += s.volume();
        const Job& j = *it->second;
        if (s.start < static_cast<double>(j.release) - kWindowGrace)
            report.violations.push_back("job " + std::to_string(j.id) +
                                        " runs before its release at t=" +
                                        std::to_string(s.start));
        if (s.end > static_cast<double>(j.deadline) + kWindowGrace)
            report.violations.push_back("job " + std::to_string(j.id) +
                                        " runs past its deadline until t=" +
                                        std::to_string(s.end));
    }
    for (const Job& j : instance.jobs()) {
        double got = 0.0;
        if (auto it = volume.find(j.id); it != volume.end()) got = it->second;
        report.jobs.push_back({j.id, j.work, got});
        if (got < j.work * (1.0 - tol))
            report.violations.push_back("job " + std::to_string(j.id) + " short by " +
                                        std::to_string(j.work - got));
    }
    return report;
}

Schedule combine_schedules(std::span<const Schedule> parts) {
    std::unordered_set<JobId> seen;
    std::vector<Slice> merged;
    for (const Schedule& part : parts) {
        std::unordered_set<JobId> own;
        for (const Slice& s : part.slices()) own.insert(s.job);
        for (JobId id : own)
            if (!seen.insert(id).second)
                throw std::invalid_argument("invalid-partition: job id " + std::to_string(id) +
                                            " appears in more than one part");
        merged.insert(merged.end(), part.slices().begin(), part.slices().end());
    }
    return Schedule(std::move(merged));
}

}  // namespace speedscale
