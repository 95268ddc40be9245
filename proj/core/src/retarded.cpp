#include "flowem/retarded.hpp"

#include <cmath>
#include <sstream>

#include "flowem/errors.hpp"

namespace flowem {

namespace {

double delay_map(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0, double T) {
    return norm(r1 - flow_position(flow, t - T, r0));
}

[[noreturn]] void convergence_failure(const Vec3& r1, double t, const Vec3& r0, int cap) {
    std::ostringstream os;
    os << "retarded-time iteration cap " << cap << " exceeded at r1 = " << r1 << ", t = " << t
       << ", r0 = " << r0 << " (declared speed bound v1 is likely too low)";
    throw ConvergenceError(os.str());
}

}  // namespace

RetardedSolution solve_retarded(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                                const RetardedOptions& opts) {
    const int cap = opts.max_iterations > 0 ? opts.max_iterations : (flow.v1 > 0.95 ? 5000 : 200);
    const double newton_entry = 1e-3;  // fixed-point has localized the root; polish from here

    RetardedSolution sol;
    double T = delay_map(flow, r1, t, r0, 0.0);
    for (int k = 0; k < cap; ++k) {
        const double next = delay_map(flow, r1, t, r0, T);
        const double dT = next - T;
        T = next;
        ++sol.iterations;
        if (std::abs(dT) <= opts.tol) {
            sol.T = T;
            return sol;
        }
        if (opts.newton && std::abs(dT) <= newton_entry * std::max(1.0, T)) {
            // g(T) = T - |r1 - r2(t-T)|, g'(T) = 1 - <e, v(t-T)>
            double Tn = T;
            for (int j = 0; j < 12; ++j) {
                const Kinematics kin = kinematics(flow, t - Tn, r0);
                const Vec3 r12 = r1 - kin.position;
                const double dist = norm(r12);
                const double g = Tn - dist;
                if (std::abs(g) <= opts.tol && Tn >= 0.0) {
                    sol.T = Tn;
                    sol.newton_used = true;
                    sol.iterations += j;
                    return sol;
                }
                if (dist <= flow.singularity_epsilon) break;  // query on matter: fall back
                const double gprime = 1.0 - dot(r12, kin.velocity) / dist;
                if (std::abs(gprime) < 1e-3) break;  // fall back to fixed point
                Tn -= g / gprime;
                if (!(Tn >= 0.0) || !std::isfinite(Tn)) break;
            }
        }
    }
    convergence_failure(r1, t, r0, cap);
}

double retarded_time(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0, double tol) {
    RetardedOptions opts;
    opts.tol = tol;
    return solve_retarded(flow, r1, t, r0, opts).T;
}

RetardedState retarded_state(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                             double tol) {
    const double T = retarded_time(flow, r1, t, r0, tol);
    const double tau = t - T;
    const Kinematics kin = kinematics(flow, tau, r0);
    return {T, tau, r1 - kin.position, kin.velocity, kin.acceleration, kin.jerk};
}

}  // namespace flowem
