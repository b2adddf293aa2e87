#ifndef SPEEDSCALE_BASELINES_HPP
#define SPEEDSCALE_BASELINES_HPP

#include "speedscale/schedule.hpp"
#include "speedscale/types.hpp"

namespace speedscale {

/// Sum of active jobs' densities at every timepoint.
SpeedProfile avr_profile(const Instance& instance);

/// Average Rate: run at the density-sum profile, EDF among released jobs.
Schedule avr(const Instance& instance);

/// Optimal Available: at each release time recompute the offline optimum for
/// the residual work of released jobs (windows clipped to start now) and
/// follow it until the next release. Event-exact.
Schedule oa(const Instance& instance);

/// qOA: on a uniform grid (cut additionally at releases and deadlines) run
/// at q times the speed OA would use in the current residual state, EDF.
/// Residual dust below 1e-9 at a deadline is dropped; that shortfall is
/// covered by the feasibility tolerance.
Schedule qoa(const Instance& instance, double q, double step);

/// The q that minimizes qOA's competitive ratio.
inline double qoa_default_q(double alpha) { return 2.0 - 1.0 / alpha; }

/// EDF allocation that follows a given speed profile exactly; used by AVR
/// and handy for replaying profiles in tests.
Schedule edf_schedule(const Instance& instance, const SpeedProfile& profile);

}  // namespace speedscale

#endif
