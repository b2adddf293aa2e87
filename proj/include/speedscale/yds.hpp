#ifndef SPEEDSCALE_YDS_HPP
#define SPEEDSCALE_YDS_HPP

#include "speedscale/schedule.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// Offline optimum by critical-interval peeling: repeatedly find the
/// interval of maximum intensity g(a,b) = sum of contained work / available
/// length, fix that speed there, remove the contained jobs, contract the
/// interval out of the timeline, repeat. Within a critical interval jobs run
/// EDF at the critical speed. The resulting schedule minimizes the energy
/// for every alpha > 1 simultaneously.
Schedule yds(const Instance& instance);

/// Test oracle: solves the discretized convex program
///   min sum_c (X_c / delta)^alpha * delta,  X_c = sum_j x_{j,c}
///   s.t. x_{j,c} >= 0, supported on [r_j, d_j), sum_c x_{j,c} = w_j
/// on a uniform grid of `grid` cells per slot, by cyclic per-job
/// water-filling until the objective stops improving. Independent of yds().
/// Guarded to small inputs (<= 8 jobs, horizon <= 32 slots).
double brute_force_optimal(const Instance& instance, int grid, double alpha);

}  // namespace speedscale

#endif
