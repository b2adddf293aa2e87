#ifndef SPEEDSCALE_SWP_HPP
#define SPEEDSCALE_SWP_HPP

#include <map>
#include <span>
#include <vector>

#include "speedscale/prediction.hpp"
#include "speedscale/schedule.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// Split of one job's volume at its arrival: `right[t]` is the volume added
/// to the right part of the t-th window slot (0 <= right[t] <= density), and
/// `left` is the remainder that goes to the job's reserved left-part
/// intervals.
struct WaterfillResult {
    double left = 0.0;            // X
    std::vector<double> right;    // y per slot
};

/// Solves the arrival-time waterfilling: find X and 0 <= y_t <= delta with
/// X + sum y_t = w such that, with threshold X/ell,
///   y_t = 0      only where V_t / mu            >= X/ell
///   0<y_t<delta  only where (V_t + y_t) / mu     = X/ell
///   y_t = delta  only where (V_t + delta) / mu  <= X/ell.
/// Exact solve over the breakpoints of the piecewise-linear fixed point.
/// ell = 0 forces y_t = delta everywhere (X = 0); mu = 0 forces X = w.
WaterfillResult waterfill(double delta, double ell, double mu, std::span<const double> V,
                          double w);

/// Same fixed point by bisection at tolerance 1e-12 * w; the independent
/// cross-check for the exact solver.
WaterfillResult waterfill_bisect(double delta, double ell, double mu,
                                 std::span<const double> V, double w);

/// Mu-independent decomposition of the shrunk-prediction optimum: for each
/// job, the slots it runs in and the in-slot offsets [a, b) of its (unique)
/// execution interval there.
class SlotRuns {
public:
    struct Run {
        Slot slot;
        double begin;  // offset in [0, 1)
        double end;    // offset in (0, 1]
    };

    SlotRuns() = default;
    explicit SlotRuns(std::map<JobId, std::vector<Run>> runs) : runs_(std::move(runs)) {}

    const std::vector<Run>* find(JobId id) const {
        auto it = runs_.find(id);
        return it == runs_.end() ? nullptr : &it->second;
    }
    const std::map<JobId, std::vector<Run>>& all() const { return runs_; }

private:
    std::map<JobId, std::vector<Run>> runs_;
};

/// Per-job reserved subintervals of the left parts, compressed by (1 - mu).
class LeftReservations {
public:
    struct Piece {
        Slot slot;
        double start;  // absolute time, inside [slot, slot + 1 - mu)
        double end;
    };

    LeftReservations() = default;
    LeftReservations(double mu, std::map<JobId, std::vector<Piece>> pieces)
        : mu_(mu), pieces_(std::move(pieces)) {}

    double mu() const { return mu_; }
    const std::vector<Piece>* find(JobId id) const {
        auto it = pieces_.find(id);
        return it == pieces_.end() ? nullptr : &it->second;
    }

private:
    double mu_ = 1.0;
    std::map<JobId, std::vector<Piece>> pieces_;
};

/// Computes the shrunk-prediction optimum and extracts each job's per-slot
/// execution intervals. Workloads are matched to predictions by job id.
SlotRuns swp_slot_runs(const ShrunkPrediction& shrunk,
                       const std::vector<std::pair<JobId, double>>& workloads);

/// Compresses the slot runs into the left parts for a given mu. mu = 1
/// leaves every left part empty.
LeftReservations swp_preprocess(const SlotRuns& runs, double mu);
LeftReservations swp_preprocess(const ShrunkPrediction& shrunk,
                                const std::vector<std::pair<JobId, double>>& workloads,
                                double mu);

/// Online phase against fixed reservations: per arrival, waterfill the job's
/// volume between its reserved left parts and the right parts of its window
/// slots; emit left pieces at X/ell and each right part at V_t/mu in EDF
/// order.
Schedule swp_run_online(const Instance& instance, const LeftReservations& reservations);

/// Full SwP(lambda, mu): shrink the predictions, preprocess, run online.
Schedule swp_run(const Instance& instance, const PredictedInstance& preds, double lambda,
                 double mu);

}  // namespace speedscale

#endif
