#pragma once

#include "flowem/flow.hpp"
#include "flowem/geometry.hpp"

namespace flowem {

/// Solution of T = |r1 - r2(t - T, r0)| together with the source kinematics
/// at the emission time tau = t - T.
struct RetardedState {
    double T = 0.0;    // time delay, >= 0
    double tau = 0.0;  // retarded time, tau + T = t exactly
    Vec3 r12;          // r1 - r2(tau, r0)
    Vec3 v;            // retarded velocity
    Vec3 a;            // retarded acceleration
    Vec3 jerk;         // retarded jerk
};

struct RetardedOptions {
    double tol = 1e-12;      // residual tolerance |T - |r1 - r2(t-T)||
    bool newton = true;      // polish with Newton once inside the fixed-point basin
    int max_iterations = 0;  // 0: 200, or 5000 when v1 > 0.95
};

struct RetardedSolution {
    double T = 0.0;
    int iterations = 0;
    bool newton_used = false;
};

/// Fixed-point iteration T <- |r1 - r2(t - T, r0)| from T0 = |r1 - r2(t, r0)|.
/// The speed bound v1 < 1 makes the map a contraction, so the solution exists
/// and is unique; an optional Newton polish on g(T) = T - |r1 - r2(t-T, r0)|
/// (g' = 1 - <e,v>, bounded away from zero) cuts the tail short.
/// Throws ConvergenceError if the iteration cap is exceeded.
RetardedSolution solve_retarded(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                                const RetardedOptions& opts = {});

double retarded_time(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                     double tol = 1e-12);

RetardedState retarded_state(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                             double tol = 1e-12);

}  // namespace flowem
