#include "speedscale/cdswp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speedscale/baselines.hpp"
#include "speedscale/yds.hpp"

namespace speedscale {

namespace {

constexpr JobId kAggregateId = 0;

// Follows `profile` on [from, to), spending the speed on the released job
// with the earliest release (ties by id). Residuals shrink in place.
struct ProfileFollower {
    struct Entry {
        Slot release;
        JobId id;
        double work;      // residual
        double original;
    };
    std::vector<Entry> entries;  // kept sorted by (release, id)

    void add(const Job& j) { entries.push_back({j.release, j.id, j.work, j.work}); }

    double residual_total() const {
        double total = 0.0;
        for (const Entry& e : entries) total += e.work;
        return total;
    }

    void follow(const SpeedProfile& profile, double from, double to,
                std::vector<Slice>& slices) {
        double t = from;
        std::size_t idx = 0;
        while (t < to) {
            while (idx < entries.size() &&
                   (entries[idx].work <= entries[idx].original * 1e-12 ||
                    entries[idx].work <= 1e-12))
                ++idx;
            if (idx >= entries.size()) break;
            double speed = profile.speed_at(t);
            double limit = to;
            for (double bp : profile.breakpoints())
                if (bp > t) {
                    limit = std::min(limit, bp);
                    break;
                }
            if (speed <= 0.0) {
                if (limit <= t) break;
                t = limit;
                continue;
            }
            Entry& top = entries[idx];
            double end = std::min(t + top.work / speed, limit);
            if (end > t) {
                slices.push_back({t, end, top.id, speed});
                top.work -= speed * (end - t);
            } else {
                top.work = 0.0;  // below time resolution
            }
            t = end;
        }
    }
};

// Speed profile of one job inside a schedule.
SpeedProfile job_profile(const Schedule& schedule, JobId id) {
    std::vector<SpeedProfile::Segment> pieces;
    for (const Slice& s : schedule.slices())
        if (s.job == id) pieces.push_back({s.start, s.end, s.speed});
    return SpeedProfile::from_segments(std::move(pieces));
}

}  // namespace

Instance build_ftp_instance(double released_residual, Slot now,
                            const std::vector<std::pair<Slot, double>>& pending, Slot d) {
    if (now >= d)
        throw std::invalid_argument("invalid-parameter: aggregate release must precede d");
    if (released_residual < 0.0)
        throw std::invalid_argument("invalid-parameter: negative residual");
    std::vector<Job> jobs;
    jobs.reserve(pending.size() + 1);
    jobs.push_back({kAggregateId, now, d, released_residual});
    JobId next = 1;
    for (const auto& [release, work] : pending) {
        Slot p = std::min(release, d - 1);  // keep a valid window for late predictions
        jobs.push_back({next++, p, d, work});
    }
    return Instance(std::move(jobs));
}

CdswpResult cdswp_run_detailed(const Instance& instance, const PredictedInstance& preds,
                               double lambda, double q, double step) {
    if (!instance.common_deadline())
        throw std::invalid_argument("invalid-instance: cdswp needs a common deadline");
    if (lambda < 0.0 || lambda > 0.5)
        throw std::invalid_argument("invalid-parameter: lambda must lie in [0, 1/2]");
    if (instance.empty()) return {};

    const Slot d = *instance.common_deadline();
    const auto& jobs = instance.jobs();

    // A wrong predicted job set counts as an inadequate prediction: recover
    // from the start, i.e. run qOA on everything.
    bool covered = preds.size() == jobs.size() &&
                   std::all_of(jobs.begin(), jobs.end(),
                               [&](const Job& j) { return preds.find(j.id) != nullptr; });
    if (!covered) {
        Schedule all = qoa(instance, q, step);
        return {all, Schedule(), all, 0};
    }

    ProfileFollower released;
    std::vector<Slice> ftp_slices;
    SpeedProfile current;  // s(FtP(i), .): zero before the first release
    std::size_t switch_index = jobs.size();

    double prev_event = static_cast<double>(jobs.front().release);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& job = jobs[i];
        double now = static_cast<double>(job.release);
        released.follow(current, prev_event, now, ftp_slices);
        prev_event = now;

        const JobPrediction* pred = preds.find(job.id);
        double denom = static_cast<double>(d - pred->p);
        double eta = denom > 0.0
                         ? std::fabs(static_cast<double>(pred->p - job.release)) / denom
                         : std::numeric_limits<double>::infinity();
        if (eta > lambda) {
            switch_index = i;
            break;
        }

        released.add(job);
        std::vector<std::pair<Slot, double>> pending;
        for (std::size_t k = i + 1; k < jobs.size(); ++k) {
            const JobPrediction* pk = preds.find(jobs[k].id);
            pending.emplace_back(shrunk_release(pk->p, d, lambda), jobs[k].work);
        }
        Instance replanned =
            build_ftp_instance(released.residual_total(), job.release, pending, d);
        current = job_profile(yds(replanned), kAggregateId);
    }

    if (switch_index == jobs.size()) {
        released.follow(current, prev_event, static_cast<double>(d), ftp_slices);
        Schedule sched(std::move(ftp_slices));
        return {sched, sched, Schedule(), std::nullopt};
    }

    // Recovery: frozen FtP(k-1) finishes jobs 1..k-1; live qOA handles k..n.
    released.follow(current, prev_event, static_cast<double>(d), ftp_slices);
    Schedule ftp_part(std::move(ftp_slices));
    std::vector<Job> tail(jobs.begin() + static_cast<std::ptrdiff_t>(switch_index),
                          jobs.end());
    Schedule qoa_part = qoa(Instance(std::move(tail)), q, step);
    std::vector<Schedule> parts{ftp_part, qoa_part};
    return {combine_schedules(parts), std::move(ftp_part), std::move(qoa_part), switch_index};
}

Schedule cdswp_run(const Instance& instance, const PredictedInstance& preds, double lambda,
                   double q, double step) {
    return cdswp_run_detailed(instance, preds, lambda, q, step).schedule;
}

}  // namespace speedscale
