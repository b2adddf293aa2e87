#include "speedscale/yds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace speedscale {

namespace {

struct ActiveJob {
    double release;
    double deadline;
    double work;
    JobId id;
};

// Disjoint, sorted intervals of already-fixed (peeled) time.
class BlockedSet {
public:
    // Contracted coordinate: x minus the blocked measure before x.
    double contract(double x) const {
        double removed = 0.0;
        for (const auto& [s, e] : spans_) {
            if (x <= s) break;
            removed += std::min(x, e) - s;
        }
        return x - removed;
    }

    // Original-time segments whose free time realizes contracted [a, b).
    // `lo`/`hi` bound the walk.
    std::vector<std::pair<double, double>> uncontract(double a, double b, double lo,
                                                      double hi) const {
        std::vector<std::pair<double, double>> out;
        double cursor = lo;
        auto emit_free = [&](double fs, double fe) {
            if (fe <= fs) return;
            double cfs = contract(fs);
            double take_lo = std::max(a, cfs);
            double take_hi = std::min(b, cfs + (fe - fs));
            if (take_hi > take_lo)
                out.emplace_back(fs + (take_lo - cfs), fs + (take_hi - cfs));
        };
        for (const auto& [s, e] : spans_) {
            emit_free(cursor, std::min(s, hi));
            cursor = std::max(cursor, e);
        }
        emit_free(cursor, hi);
        return out;
    }

    void insert(std::vector<std::pair<double, double>> segs) {
        spans_.insert(spans_.end(), segs.begin(), segs.end());
        std::sort(spans_.begin(), spans_.end());
        std::vector<std::pair<double, double>> merged;
        for (const auto& sp : spans_) {
            if (!merged.empty() && sp.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, sp.second);
            else
                merged.push_back(sp);
        }
        spans_ = std::move(merged);
    }

private:
    std::vector<std::pair<double, double>> spans_;
};

struct CriticalInterval {
    double intensity = 0.0;
    double start = 0.0;  // contracted
    double end = 0.0;    // contracted
    bool found = false;
};

// Max-intensity interval over candidate endpoints drawn from the contracted
// releases (starts) and deadlines (ends). Ties: leftmost, then shortest.
CriticalInterval find_critical(const std::vector<double>& crs, const std::vector<double>& cds,
                               const std::vector<double>& works) {
    std::vector<double> starts = crs;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::vector<double> ends = cds;
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

    // Jobs ordered by release descending, inserted as the start sweeps left.
    std::vector<std::size_t> order(crs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return crs[x] > crs[y]; });

    std::vector<double> weight_at_end(ends.size(), 0.0);
    auto end_index = [&](double d) {
        return static_cast<std::size_t>(
            std::lower_bound(ends.begin(), ends.end(), d) - ends.begin());
    };

    CriticalInterval best;
    std::size_t next = 0;
    for (auto sit = starts.rbegin(); sit != starts.rend(); ++sit) {
        double a = *sit;
        while (next < order.size() && crs[order[next]] >= a) {
            std::size_t j = order[next++];
            weight_at_end[end_index(cds[j])] += works[j];
        }
        double prefix = 0.0;
        for (std::size_t e = 0; e < ends.size(); ++e) {
            prefix += weight_at_end[e];
            double b = ends[e];
            if (b <= a) continue;
            double g = prefix / (b - a);
            bool better = !best.found || g > best.intensity ||
                          (g == best.intensity &&
                           (a < best.start ||
                            (a == best.start && b - a < best.end - best.start)));
            if (better) best = {g, a, b, true};
        }
    }
    return best;
}

}  // namespace

Schedule yds(const Instance& instance) {
    if (instance.empty()) return Schedule();

    std::vector<ActiveJob> active;
    active.reserve(instance.size());
    for (const Job& j : instance.jobs())
        active.push_back({static_cast<double>(j.release), static_cast<double>(j.deadline),
                          j.work, j.id});

    const double lo = static_cast<double>(instance.horizon_start());
    const double hi = static_cast<double>(instance.horizon_end());

    BlockedSet blocked;
    std::vector<Slice> slices;

    while (std::any_of(active.begin(), active.end(),
                       [](const ActiveJob& j) { return j.work > 0.0; })) {
        std::vector<double> crs(active.size()), cds(active.size()), works(active.size());
        for (std::size_t i = 0; i < active.size(); ++i) {
            crs[i] = blocked.contract(active[i].release);
            cds[i] = blocked.contract(active[i].deadline);
            works[i] = active[i].work;
        }
        CriticalInterval crit = find_critical(crs, cds, works);
        if (!crit.found || crit.intensity <= 0.0) break;

        std::vector<std::size_t> contained;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (crs[i] >= crit.start && cds[i] <= crit.end) contained.push_back(i);

        auto segs = blocked.uncontract(crit.start, crit.end, lo, hi);

        // EDF at the critical speed across the free segments, honoring
        // releases: a contained job may arrive mid-interval.
        struct FillJob {
            double release;
            double deadline;
            JobId id;
            double need;  // remaining time at the critical speed
        };
        std::vector<FillJob> fill;
        for (std::size_t i : contained)
            if (active[i].work > 0.0)
                fill.push_back({active[i].release, active[i].deadline, active[i].id,
                                active[i].work / crit.intensity});
        std::size_t si = 0;
        double t = segs.empty() ? 0.0 : segs.front().first;
        const double dust = 1e-12;
        while (si < segs.size()) {
            if (t >= segs[si].second - dust) {
                if (++si == segs.size()) break;
                t = segs[si].first;
                continue;
            }
            t = std::max(t, segs[si].first);
            FillJob* top = nullptr;
            double next_release = std::numeric_limits<double>::infinity();
            bool pending = false;
            for (FillJob& f : fill) {
                if (f.need <= dust) continue;
                pending = true;
                if (f.release <= t + dust) {
                    if (!top || f.deadline < top->deadline ||
                        (f.deadline == top->deadline && f.id < top->id))
                        top = &f;
                } else {
                    next_release = std::min(next_release, f.release);
                }
            }
            if (!pending) break;
            if (!top) {  // only float dust can idle a critical interval
                t = std::min(next_release, segs[si].second);
                continue;
            }
            double end = std::min({t + top->need, segs[si].second, next_release});
            if (end > t) {
                slices.push_back({t, end, top->id, crit.intensity});
                top->need -= end - t;
            } else {
                top->need = 0.0;  // below time resolution
            }
            t = end;
        }

        blocked.insert(std::move(segs));
        std::vector<ActiveJob> rest;
        rest.reserve(active.size() - contained.size());
        std::size_t ci = 0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (ci < contained.size() && contained[ci] == i)
                ++ci;
            else
                rest.push_back(active[i]);
        }
        active = std::move(rest);
    }

    return Schedule(std::move(slices));
}

double brute_force_optimal(const Instance& instance, int grid, double alpha) {
    if (grid <= 0) throw std::invalid_argument("invalid-parameter: grid must be positive");
    if (alpha <= 1.0) throw std::invalid_argument("invalid-parameter: alpha must exceed 1");
    if (instance.empty()) return 0.0;

    const Slot h0 = instance.horizon_start();
    const Slot h1 = instance.horizon_end();
    if (instance.size() > 8 || h1 - h0 > 32)
        throw std::invalid_argument("oracle-too-large: limit is 8 jobs over 32 slots");

    const std::size_t cells = static_cast<std::size_t>(h1 - h0) * static_cast<std::size_t>(grid);
    const double delta = 1.0 / grid;
    const std::size_t n = instance.size();

    // x[j][c]: volume of job j in cell c (window cells only, stored dense).
    std::vector<std::vector<double>> x(n, std::vector<double>(cells, 0.0));
    std::vector<double> load(cells, 0.0);
    std::vector<std::size_t> cell_lo(n), cell_hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Job& job = instance[j];
        cell_lo[j] = static_cast<std::size_t>((job.release - h0) * grid);
        cell_hi[j] = static_cast<std::size_t>((job.deadline - h0) * grid);
        double per = job.work / static_cast<double>(cell_hi[j] - cell_lo[j]);
        for (std::size_t c = cell_lo[j]; c < cell_hi[j]; ++c) {
            x[j][c] = per;
            load[c] += per;
        }
    }

    auto objective = [&]() {
        double total = 0.0;
        for (double l : load) total += std::pow(l / delta, alpha) * delta;
        return total;
    };

    // Cyclic exact water-filling per job. For one job against the others'
    // load the optimum fills cells up to a common level, which does not
    // depend on alpha.
    double prev = objective();
    for (int pass = 0; pass < 20000; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            if (instance[j].work <= 0.0) continue;
            std::vector<double> others;
            others.reserve(cell_hi[j] - cell_lo[j]);
            for (std::size_t c = cell_lo[j]; c < cell_hi[j]; ++c)
                others.push_back(load[c] - x[j][c]);
            std::vector<double> sorted = others;
            std::sort(sorted.begin(), sorted.end());
            double w = instance[j].work;
            double level = 0.0, prefix = 0.0;
            for (std::size_t k = 0; k < sorted.size(); ++k) {
                prefix += sorted[k];
                double cand = (w + prefix) / static_cast<double>(k + 1);
                if (k + 1 == sorted.size() || cand <= sorted[k + 1]) {
                    level = cand;
                    break;
                }
            }
            for (std::size_t c = cell_lo[j]; c < cell_hi[j]; ++c) {
                double nx = std::max(0.0, level - others[c - cell_lo[j]]);
                load[c] += nx - x[j][c];
                x[j][c] = nx;
            }
        }
        double cur = objective();
        if (prev - cur < 1e-13 * std::max(1.0, cur)) break;
        prev = cur;
    }
    return objective();
}

}  // namespace speedscale
