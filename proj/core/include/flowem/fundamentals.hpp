#pragma once

#include "flowem/flow.hpp"
#include "flowem/geometry.hpp"
#include "flowem/retarded.hpp"

namespace flowem {

/// The fields e = r12/T, u = 1/T, z = 1/(1 - <e,v>) together with the
/// retarded kinematics, evaluated at one (r1, t, r0) triple with T > 0.
struct FundamentalFields {
    double T = 0.0;
    double tau = 0.0;
    Vec3 r12;
    Vec3 e;          // unit vector from retarded source to observer
    double u = 0.0;  // 1/T
    double z = 0.0;  // Doppler-like factor
    Vec3 v, a, jerk;
};

/// First partial derivatives of the fundamental fields with respect to the
/// observer coordinates (grad_* and the d* matrices, row i = D_i) and time
/// (capital-D scalars/vectors).  Da extends Dv = z a by the same chain rule:
/// Da = z * jerk(tau).
struct FundamentalJacobian {
    Vec3 grad_T, grad_u, grad_tau, grad_z;
    Mat3 dv;  // row i = D_i v = -z e_i a
    Mat3 de;  // row i = D_i e = -u z e_i e + u delta_i + u z e_i v
    double DT = 0.0;    // 1 - z
    double Du = 0.0;    // z u^2 - u^2
    double Dtau = 0.0;  // z
    double Dz = 0.0;
    Vec3 Dv;  // z a
    Vec3 De;  // -u e + u z e - u z v
    Vec3 Da;  // z jerk
};

/// Throws OnMatterError when T < flow.singularity_epsilon.
FundamentalFields eval_fundamentals(const FlowModel& flow, const Vec3& r1, double t,
                                    const Vec3& r0, double tol = 1e-12);

/// Closed-form first derivatives assembled from the fields alone.
FundamentalJacobian analytic_jacobian(const FundamentalFields& f);

FundamentalJacobian analytic_jacobian(const FlowModel& flow, const Vec3& r1, double t,
                                      const Vec3& r0, double tol = 1e-12);

/// Central differences over the observer coordinates and time with one
/// Richardson extrapolation level (fourth order); the independent oracle for
/// analytic_jacobian.  h defaults to 1e-4 * max(1, T).
FundamentalJacobian fd_jacobian(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                                double h = 0.0, double tol = 1e-13);

}  // namespace flowem
