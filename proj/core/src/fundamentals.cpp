#include "flowem/fundamentals.hpp"

#include <cmath>
#include <sstream>

#include "flowem/errors.hpp"

namespace flowem {

FundamentalFields eval_fundamentals(const FlowModel& flow, const Vec3& r1, double t,
                                    const Vec3& r0, double tol) {
    const RetardedState s = retarded_state(flow, r1, t, r0, tol);
    if (s.T < flow.singularity_epsilon) {
        std::ostringstream os;
        os << "query (" << r1 << ", t = " << t << ") lies on matter for source r0 = " << r0
           << " (T = " << s.T << ")";
        throw OnMatterError(os.str(), {r0});
    }
    FundamentalFields f;
    f.T = s.T;
    f.tau = s.tau;
    f.r12 = s.r12;
    f.u = 1.0 / s.T;
    f.e = s.r12 * f.u;
    f.z = 1.0 / (1.0 - dot(f.e, s.v));
    f.v = s.v;
    f.a = s.a;
    f.jerk = s.jerk;
    return f;
}

FundamentalJacobian analytic_jacobian(const FundamentalFields& f) {
    const double u = f.u, z = f.z;
    const Vec3 e = f.e, v = f.v, a = f.a;
    const double ea = dot(e, a);
    const double vv = dot(v, v);

    FundamentalJacobian J;
    J.grad_T = z * e;
    J.grad_u = -z * u * u * e;
    J.grad_tau = -z * e;
    for (int i = 0; i < 3; ++i) {
        const double ei = e[i];
        J.dv.row(i) = -z * ei * a;
        J.de.row(i) = -u * z * ei * e + u * basis(i) + u * z * ei * v;
        // D_i z = -z^3 e_i <e,a> - u z^3 e_i + u z^2 e_i + u z^2 v_i + u z^3 e_i <v,v>
        J.grad_z[i] = -z * z * z * ei * ea - u * z * z * z * ei + u * z * z * ei +
                      u * z * z * v[i] + u * z * z * z * ei * vv;
    }
    J.DT = 1.0 - z;
    J.Du = z * u * u - u * u;
    J.Dtau = z;
    J.Dv = z * a;
    J.De = -u * e + u * z * e - u * z * v;
    J.Dz = u * z - 2.0 * u * z * z + z * z * z * ea + u * z * z * z - u * z * z * z * vv;
    J.Da = z * f.jerk;
    return J;
}

FundamentalJacobian analytic_jacobian(const FlowModel& flow, const Vec3& r1, double t,
                                      const Vec3& r0, double tol) {
    return analytic_jacobian(eval_fundamentals(flow, r1, t, r0, tol));
}

namespace {

struct FieldValues {
    double T, tau, u, z;
    Vec3 v, e, a;
};

FieldValues values_at(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                      double tol) {
    const FundamentalFields f = eval_fundamentals(flow, r1, t, r0, tol);
    return {f.T, f.tau, f.u, f.z, f.v, f.e, f.a};
}

FieldValues combine(const FieldValues& p, const FieldValues& m, double scale) {
    FieldValues d;
    d.T = (p.T - m.T) * scale;
    d.tau = (p.tau - m.tau) * scale;
    d.u = (p.u - m.u) * scale;
    d.z = (p.z - m.z) * scale;
    d.v = (p.v - m.v) * scale;
    d.e = (p.e - m.e) * scale;
    d.a = (p.a - m.a) * scale;
    return d;
}

FieldValues richardson(const FieldValues& coarse, const FieldValues& fine) {
    // (4 D_{h/2} - D_h) / 3
    FieldValues d;
    d.T = (4.0 * fine.T - coarse.T) / 3.0;
    d.tau = (4.0 * fine.tau - coarse.tau) / 3.0;
    d.u = (4.0 * fine.u - coarse.u) / 3.0;
    d.z = (4.0 * fine.z - coarse.z) / 3.0;
    d.v = (4.0 * fine.v - coarse.v) / 3.0;
    d.e = (4.0 * fine.e - coarse.e) / 3.0;
    d.a = (4.0 * fine.a - coarse.a) / 3.0;
    return d;
}

}  // namespace

FundamentalJacobian fd_jacobian(const FlowModel& flow, const Vec3& r1, double t, const Vec3& r0,
                                double h, double tol) {
    if (h <= 0.0) {
        const double T0 = retarded_time(flow, r1, t, r0, tol);
        h = 1e-4 * std::max(1.0, T0);
    }

    auto central = [&](int axis, double step) {
        Vec3 rp = r1, rm = r1;
        double tp = t, tm = t;
        if (axis < 3) {
            rp[axis] += step;
            rm[axis] -= step;
        } else {
            tp += step;
            tm -= step;
        }
        return combine(values_at(flow, rp, tp, r0, tol), values_at(flow, rm, tm, r0, tol),
                       0.5 / step);
    };

    FundamentalJacobian J;
    for (int axis = 0; axis < 4; ++axis) {
        const FieldValues d = richardson(central(axis, h), central(axis, h / 2.0));
        if (axis < 3) {
            J.grad_T[axis] = d.T;
            J.grad_u[axis] = d.u;
            J.grad_tau[axis] = d.tau;
            J.grad_z[axis] = d.z;
            J.dv.row(axis) = d.v;
            J.de.row(axis) = d.e;
        } else {
            J.DT = d.T;
            J.Du = d.u;
            J.Dtau = d.tau;
            J.Dz = d.z;
            J.Dv = d.v;
            J.De = d.e;
            J.Da = d.a;
        }
    }
    return J;
}

}  // namespace flowem
