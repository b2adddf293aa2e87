#include "speedscale/swp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speedscale/yds.hpp"

namespace speedscale {

namespace {

void check_waterfill_inputs(double delta, double ell, double mu, std::span<const double> V,
                            double w) {
    if (delta < 0.0 || ell < 0.0 || w < 0.0)
        throw std::invalid_argument("invalid-parameter: waterfill inputs must be nonnegative");
    if (mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("invalid-parameter: mu must lie in [0, 1]");
    for (double v : V)
        if (v < 0.0)
            throw std::invalid_argument("invalid-parameter: right loads must be nonnegative");
    double expect = delta * static_cast<double>(V.size());
    if (std::fabs(w - expect) > 1e-9 * std::max(1.0, w))
        throw std::invalid_argument("invalid-parameter: w must equal delta * slot count");
}

std::vector<double> clamp_assignments(double x, double coeff, double delta,
                                      std::span<const double> V) {
    std::vector<double> y(V.size());
    for (std::size_t t = 0; t < V.size(); ++t)
        y[t] = std::clamp(coeff * x - V[t], 0.0, delta);
    return y;
}

WaterfillResult finish(double x, double coeff, double delta, std::span<const double> V,
                       double w) {
    WaterfillResult res;
    res.right = clamp_assignments(x, coeff, delta, V);
    double total = 0.0;
    for (double y : res.right) total += y;
    res.left = w - total;  // conservation exactly, X within float eps of the root
    if (res.left < 0.0) res.left = 0.0;
    return res;
}

}  // namespace

WaterfillResult waterfill(double delta, double ell, double mu, std::span<const double> V,
                          double w) {
    check_waterfill_inputs(delta, ell, mu, V, w);
    if (w <= 0.0) return {0.0, std::vector<double>(V.size(), 0.0)};
    if (ell <= 0.0) return {0.0, std::vector<double>(V.size(), delta)};
    if (mu <= 0.0) return {w, std::vector<double>(V.size(), 0.0)};

    const double coeff = mu / ell;
    // G(X) = X + sum_t clamp(coeff*X - V_t, 0, delta) - w, strictly increasing,
    // G(0) = -w < 0, G(w) >= 0: root in (0, w].
    auto G = [&](double x) {
        double total = x - w;
        for (double v : V) total += std::clamp(coeff * x - v, 0.0, delta);
        return total;
    };

    std::vector<double> cuts{0.0, w};
    for (double v : V) {
        double a = v / coeff;
        double b = (v + delta) / coeff;
        if (a > 0.0 && a < w) cuts.push_back(a);
        if (b > 0.0 && b < w) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double root = w;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double g0 = G(cuts[i]);
        double g1 = G(cuts[i + 1]);
        if (g0 > 0.0) {  // root already passed (float noise); take the left edge
            root = cuts[i];
            break;
        }
        if (g1 >= 0.0) {
            root = g1 == g0 ? cuts[i]
                            : cuts[i] + (cuts[i + 1] - cuts[i]) * (-g0) / (g1 - g0);
            break;
        }
    }
    return finish(root, coeff, delta, V, w);
}

WaterfillResult waterfill_bisect(double delta, double ell, double mu,
                                 std::span<const double> V, double w) {
    check_waterfill_inputs(delta, ell, mu, V, w);
    if (w <= 0.0) return {0.0, std::vector<double>(V.size(), 0.0)};
    if (ell <= 0.0) return {0.0, std::vector<double>(V.size(), delta)};
    if (mu <= 0.0) return {w, std::vector<double>(V.size(), 0.0)};

    const double coeff = mu / ell;
    auto G = [&](double x) {
        double total = x - w;
        for (double v : V) total += std::clamp(coeff * x - v, 0.0, delta);
        return total;
    };
    double lo = 0.0, hi = w;
    while (hi - lo > 1e-12 * w) {
        double mid = lo + (hi - lo) / 2.0;
        if (G(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return finish(hi, coeff, delta, V, w);
}

SlotRuns swp_slot_runs(const ShrunkPrediction& shrunk,
                       const std::vector<std::pair<JobId, double>>& workloads) {
    std::vector<Job> predicted;
    predicted.reserve(workloads.size());
    for (const auto& [id, work] : workloads) {
        const ShrunkJobPrediction* e = shrunk.find(id);
        if (!e)
            throw std::invalid_argument("invalid-parameter: no shrunk prediction for job " +
                                        std::to_string(id));
        if (e->p >= e->q) continue;  // degenerate window: job gets no reservation
        predicted.push_back({id, e->p, e->q, work});
    }
    Schedule plan = yds(Instance(std::move(predicted)));

    std::map<JobId, std::vector<SlotRuns::Run>> runs;
    for (const Slice& s : plan.slices()) {
        Slot first = static_cast<Slot>(std::floor(s.start));
        for (Slot t = first; static_cast<double>(t) < s.end; ++t) {
            double lo = std::max(s.start, static_cast<double>(t));
            double hi = std::min(s.end, static_cast<double>(t + 1));
            if (hi <= lo) continue;
            auto& list = runs[s.job];
            double a = lo - static_cast<double>(t);
            double b = hi - static_cast<double>(t);
            // YDS runs each job at most once per slot; a split slice in the
            // same slot can only continue the previous piece
            if (!list.empty() && list.back().slot == t && list.back().end >= a - 1e-12)
                list.back().end = std::max(list.back().end, b);
            else
                list.push_back({t, a, b});
        }
    }
    return SlotRuns(std::move(runs));
}

LeftReservations swp_preprocess(const SlotRuns& runs, double mu) {
    if (mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("invalid-parameter: mu must lie in [0, 1]");
    std::map<JobId, std::vector<LeftReservations::Piece>> pieces;
    const double squeeze = 1.0 - mu;
    if (squeeze > 0.0) {
        // in-slot offsets shrink by (1 - mu) so the reservation lands in the
        // left part [t, t + 1 - mu)
        for (const auto& [id, list] : runs.all()) {
            auto& out = pieces[id];
            out.reserve(list.size());
            for (const SlotRuns::Run& run : list) {
                double base = static_cast<double>(run.slot);
                out.push_back({run.slot, base + run.begin * squeeze, base + run.end * squeeze});
            }
        }
    }
    return LeftReservations(mu, std::move(pieces));
}

LeftReservations swp_preprocess(const ShrunkPrediction& shrunk,
                                const std::vector<std::pair<JobId, double>>& workloads,
                                double mu) {
    return swp_preprocess(swp_slot_runs(shrunk, workloads), mu);
}

Schedule swp_run_online(const Instance& instance, const LeftReservations& reservations) {
    const double mu = reservations.mu();
    std::map<Slot, double> right_volume;                       // V_t (running)
    struct RightPiece {
        JobId id;
        double volume;
        Slot deadline;
    };
    std::map<Slot, std::vector<RightPiece>> right_parts;
    std::vector<Slice> slices;

    for (const Job& j : instance.jobs()) {  // arrival order: (release, id)
        if (j.work <= 0.0) continue;
        const Slot r = j.release, d = j.deadline;
        const std::size_t span = static_cast<std::size_t>(d - r);

        // reserved left pieces inside the true window
        std::vector<LeftReservations::Piece> usable;
        double ell = 0.0;
        if (const auto* list = reservations.find(j.id)) {
            for (const auto& piece : *list)
                if (piece.slot >= r && piece.slot < d) {
                    usable.push_back(piece);
                    ell += piece.end - piece.start;
                }
        }

        std::vector<double> V(span, 0.0);
        for (std::size_t t = 0; t < span; ++t) {
            auto it = right_volume.find(r + static_cast<Slot>(t));
            if (it != right_volume.end()) V[t] = it->second;
        }

        WaterfillResult split = waterfill(j.density(), ell, mu, V, j.work);

        if (mu <= 0.0 && ell <= 0.0)
            throw std::runtime_error("swp: mu = 0 with no usable reservation for job " +
                                     std::to_string(j.id));

        for (std::size_t t = 0; t < span; ++t) {
            if (split.right[t] <= 0.0) continue;
            Slot slot = r + static_cast<Slot>(t);
            right_volume[slot] += split.right[t];
            right_parts[slot].push_back({j.id, split.right[t], d});
        }
        if (split.left > 0.0) {
            double speed = split.left / ell;
            for (const auto& piece : usable)
                slices.push_back({piece.start, piece.end, j.id, speed});
        }
    }

    // right parts: total volume V_t over [t + 1 - mu, t + 1) at V_t / mu, EDF.
    // Boundaries come from cumulative volume fractions so the pieces tile the
    // right part exactly, with no float slivers at slot edges.
    for (auto& [slot, parts] : right_parts) {
        double total = right_volume[slot];
        if (total <= 0.0) continue;
        double speed = total / mu;
        std::sort(parts.begin(), parts.end(), [](const RightPiece& a, const RightPiece& b) {
            return a.deadline != b.deadline ? a.deadline < b.deadline : a.id < b.id;
        });
        const double begin = static_cast<double>(slot) + 1.0 - mu;
        double cursor = begin;
        double acc = 0.0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            acc += parts[i].volume;
            double end = i + 1 == parts.size() ? static_cast<double>(slot) + 1.0
                                               : begin + mu * (acc / total);
            slices.push_back({cursor, end, parts[i].id, speed});
            cursor = end;
        }
    }
    return Schedule(std::move(slices));
}

Schedule swp_run(const Instance& instance, const PredictedInstance& preds, double lambda,
                 double mu) {
    if (mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("invalid-parameter: mu must lie in [0, 1]");
    ShrunkPrediction shrunk = shrink(preds, lambda);  // validates lambda
    std::vector<std::pair<JobId, double>> workloads;
    workloads.reserve(instance.size());
    for (const Job& j : instance.jobs()) workloads.emplace_back(j.id, j.work);
    LeftReservations reservations = swp_preprocess(shrunk, workloads, mu);
    return swp_run_online(instance, reservations);
}

}  // namespace speedscale
