#include "speedscale/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace speedscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Residual {
    double deadline;
    JobId id;
    double work;      // remaining
    double original;  // full workload, for dust thresholds

    bool done() const { return work <= original * 1e-12 || work <= 1e-12; }
};

}  // namespace

SpeedProfile avr_profile(const Instance& instance) {
    std::vector<SpeedProfile::Segment> pieces;
    pieces.reserve(instance.size());
    for (const Job& j : instance.jobs()) {
        if (j.work <= 0.0) continue;
        pieces.push_back({static_cast<double>(j.release), static_cast<double>(j.deadline),
                          j.density()});
    }
    return SpeedProfile::from_segments(std::move(pieces));
}

Schedule avr(const Instance& instance) {
    return edf_schedule(instance, avr_profile(instance));
}

Schedule edf_schedule(const Instance& instance, const SpeedProfile& profile) {
    // (deadline, id) -> residual; populated as jobs get released.
    std::map<std::pair<double, JobId>, Residual> active;
    std::size_t next_release = 0;
    const auto& jobs = instance.jobs();

    std::vector<Slice> slices;
    double t = jobs.empty() ? 0.0 : static_cast<double>(jobs.front().release);

    auto release_up_to = [&](double now) {
        while (next_release < jobs.size() &&
               static_cast<double>(jobs[next_release].release) <= now) {
            const Job& j = jobs[next_release++];
            if (j.work > 0.0)
                active.insert({{static_cast<double>(j.deadline), j.id},
                               {static_cast<double>(j.deadline), j.id, j.work, j.work}});
        }
    };

    while (true) {
        release_up_to(t);
        if (active.empty()) {
            if (next_release >= jobs.size()) break;
            t = static_cast<double>(jobs[next_release].release);
            continue;
        }
        double limit = kInf;
        if (next_release < jobs.size())
            limit = static_cast<double>(jobs[next_release].release);
        // stop at the next profile breakpoint too, so the speed is constant
        for (double bp : profile.breakpoints())
            if (bp > t) {
                limit = std::min(limit, bp);
                break;
            }
        double speed = profile.speed_at(t);
        if (speed <= 0.0) {
            if (limit == kInf) break;  // profile exhausted with work pending
            t = limit;
            continue;
        }
        Residual& top = active.begin()->second;
        double end = std::min(t + top.work / speed, limit);
        if (end > t) {
            slices.push_back({t, end, top.id, speed});
            top.work -= speed * (end - t);
        } else {
            top.work = 0.0;  // residual below time resolution
        }
        if (top.done()) active.erase(active.begin());
        t = end;
    }
    return Schedule(std::move(slices));
}

namespace {

// Offline optimum for jobs that are all available at `now`: the classic
// decreasing staircase over deadline prefixes. Emits slices until `limit`,
// updating residuals in place. `items` must be sorted by (deadline, id) and
// hold positive residuals with deadlines > now.
void run_staircase(std::vector<Residual>& items, double now, double limit,
                   std::vector<Slice>& slices) {
    std::size_t base = 0;
    double t = now;
    while (base < items.size() && t < limit) {
        double best_ratio = -1.0;
        std::size_t best_k = base;
        double prefix = 0.0;
        for (std::size_t k = base; k < items.size(); ++k) {
            prefix += items[k].work;
            double span = items[k].deadline - t;
            if (span <= 1e-12) span = 1e-12;  // dust stuck at its deadline
            double ratio = prefix / span;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_k = k;
            }
        }
        if (best_ratio <= 0.0) break;
        double speed = best_ratio;
        for (std::size_t k = base; k <= best_k && t < limit; ++k) {
            Residual& it = items[k];
            double end = std::min(t + it.work / speed, limit);
            if (end > t) {
                slices.push_back({t, end, it.id, speed});
                it.work -= speed * (end - t);
            } else {
                it.work = 0.0;  // residual below time resolution
            }
            t = end;
        }
        if (t >= limit) break;
        base = best_k + 1;
    }
}

}  // namespace

Schedule oa(const Instance& instance) {
    const auto& jobs = instance.jobs();
    if (jobs.empty()) return Schedule();

    std::vector<double> releases;
    for (const Job& j : jobs) releases.push_back(static_cast<double>(j.release));
    releases.erase(std::unique(releases.begin(), releases.end()), releases.end());

    std::map<JobId, Residual> state;
    std::size_t next_release = 0;
    std::vector<Slice> slices;

    for (std::size_t k = 0; k < releases.size(); ++k) {
        double now = releases[k];
        double limit = k + 1 < releases.size() ? releases[k + 1] : kInf;
        while (next_release < jobs.size() &&
               static_cast<double>(jobs[next_release].release) <= now) {
            const Job& j = jobs[next_release++];
            if (j.work > 0.0)
                state.emplace(j.id, Residual{static_cast<double>(j.deadline), j.id, j.work,
                                             j.work});
        }
        std::vector<Residual> items;
        items.reserve(state.size());
        for (const auto& [id, res] : state)
            if (!res.done()) items.push_back(res);
        std::sort(items.begin(), items.end(), [](const Residual& a, const Residual& b) {
            return a.deadline != b.deadline ? a.deadline < b.deadline : a.id < b.id;
        });
        run_staircase(items, now, limit, slices);
        for (const Residual& it : items) {
            if (it.done())
                state.erase(it.id);
            else
                state[it.id].work = it.work;
        }
    }
    return Schedule(std::move(slices));
}

Schedule qoa(const Instance& instance, double q, double step) {
    if (q < 1.0) throw std::invalid_argument("invalid-parameter: q must be >= 1");
    if (step <= 0.0 || step > 1.0)
        throw std::invalid_argument("invalid-parameter: step must lie in (0, 1]");
    const auto& jobs = instance.jobs();
    if (jobs.empty()) return Schedule();

    std::set<double> events;  // releases and deadlines cut the grid
    for (const Job& j : jobs) {
        events.insert(static_cast<double>(j.release));
        events.insert(static_cast<double>(j.deadline));
    }

    // (deadline, id) ordering doubles as the EDF queue.
    std::map<std::pair<double, JobId>, Residual> active;
    std::size_t next_release = 0;
    std::vector<Slice> slices;
    double t = static_cast<double>(jobs.front().release);

    while (true) {
        while (next_release < jobs.size() &&
               static_cast<double>(jobs[next_release].release) <= t) {
            const Job& j = jobs[next_release++];
            if (j.work > 0.0)
                active.insert({{static_cast<double>(j.deadline), j.id},
                               {static_cast<double>(j.deadline), j.id, j.work, j.work}});
        }
        // deadline flush: residual dust is dropped, not carried past d
        for (auto it = active.begin(); it != active.end();) {
            if (it->second.deadline <= t + 1e-12 && it->second.work <= 1e-9)
                it = active.erase(it);
            else
                ++it;
        }
        if (active.empty()) {
            if (next_release >= jobs.size()) break;
            t = static_cast<double>(jobs[next_release].release);
            continue;
        }
        double next_t = t + step;
        auto ev = events.upper_bound(t);
        if (ev != events.end()) next_t = std::min(next_t, *ev);

        // OA's current speed: the steepest deadline-prefix intensity.
        double s_oa = 0.0;
        double prefix = 0.0;
        for (const auto& [key, res] : active) {
            prefix += res.work;
            double span = std::max(res.deadline - t, 1e-12);
            s_oa = std::max(s_oa, prefix / span);
        }
        double speed = q * s_oa;
        double capacity = speed * (next_t - t);
        double cursor = t;
        while (capacity > 0.0 && !active.empty()) {
            Residual& top = active.begin()->second;
            double vol = std::min(top.work, capacity);
            double dur = vol / speed;
            slices.push_back({cursor, cursor + dur, top.id, speed});
            top.work -= vol;
            capacity -= vol;
            cursor += dur;
            if (top.done())
                active.erase(active.begin());
            else
                break;  // capacity exhausted on the EDF head
        }
        t = next_t;
    }
    return Schedule(std::move(slices));
}

}  // namespace speedscale
