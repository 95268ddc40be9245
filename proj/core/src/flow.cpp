#include "flowem/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flowem/errors.hpp"

namespace flowem {

namespace {

std::vector<Vec3> lattice(const Vec3& lo, const Vec3& hi, int per_axis) {
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(per_axis) * per_axis * per_axis);
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j)
            for (int k = 0; k < per_axis; ++k) {
                auto frac = [&](int idx) {
                    return per_axis == 1 ? 0.5 : static_cast<double>(idx) / (per_axis - 1);
                };
                out.push_back({lo.x + (hi.x - lo.x) * frac(i), lo.y + (hi.y - lo.y) * frac(j),
                               lo.z + (hi.z - lo.z) * frac(k)});
            }
    return out;
}

int axis_count(int n) {
    const int m = static_cast<int>(std::lround(std::cbrt(static_cast<double>(std::max(n, 2)))));
    return std::max(2, m);
}

}  // namespace

bool region_contains(const SupportRegion& region, const Vec3& p, double slack) {
    return std::visit(
        [&](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return p.x >= r.lo.x - slack && p.x <= r.hi.x + slack && p.y >= r.lo.y - slack &&
                       p.y <= r.hi.y + slack && p.z >= r.lo.z - slack && p.z <= r.hi.z + slack;
            } else if constexpr (std::is_same_v<T, BallRegion>) {
                return norm(p - r.center) <= r.radius + slack;
            } else {
                for (const Vec3& q : r.points)
                    if (norm(p - q) <= slack) return true;
                return false;
            }
        },
        region);
}

std::vector<Vec3> sample_region(const SupportRegion& region, int n) {
    return std::visit(
        [&](const auto& r) -> std::vector<Vec3> {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return lattice(r.lo, r.hi, axis_count(n));
            } else if constexpr (std::is_same_v<T, BallRegion>) {
                const Vec3 lo = r.center - Vec3{r.radius, r.radius, r.radius};
                const Vec3 hi = r.center + Vec3{r.radius, r.radius, r.radius};
                std::vector<Vec3> out;
                for (const Vec3& p : lattice(lo, hi, axis_count(2 * n)))
                    if (norm(p - r.center) <= r.radius) out.push_back(p);
                if (out.empty()) out.push_back(r.center);
                return out;
            } else {
                return r.points;
            }
        },
        region);
}

BoxRegion region_bounds(const SupportRegion& region) {
    return std::visit(
        [&](const auto& r) -> BoxRegion {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return r;
            } else if constexpr (std::is_same_v<T, BallRegion>) {
                const Vec3 rad{r.radius, r.radius, r.radius};
                return {r.center - rad, r.center + rad};
            } else {
                Vec3 lo = r.points.front(), hi = r.points.front();
                for (const Vec3& p : r.points) {
                    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
                    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
                }
                return {lo, hi};
            }
        },
        region);
}

void check_region(const SupportRegion& region) {
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                if (r.lo.x > r.hi.x || r.lo.y > r.hi.y || r.lo.z > r.hi.z)
                    throw SceneError("support box has min > max");
            } else if constexpr (std::is_same_v<T, BallRegion>) {
                if (!(r.radius > 0.0)) throw SceneError("support ball radius must be > 0");
            } else {
                if (r.points.empty()) throw SceneError("support point set is empty");
                for (size_t i = 0; i < r.points.size(); ++i)
                    for (size_t j = i + 1; j < r.points.size(); ++j)
                        if (r.points[i] == r.points[j])
                            throw SceneError("support point set has duplicate points");
            }
        },
        region);
}

Kinematics kinematics(const FlowModel& flow, double t, const Vec3& r0) {
    if (!region_contains(flow.support, r0))
        throw SceneError("kinematics: r0 outside the flow support");
    const Jet3 jx = eval_jet3(flow.x, t, r0, flow.params);
    const Jet3 jy = eval_jet3(flow.y, t, r0, flow.params);
    const Jet3 jz = eval_jet3(flow.z, t, r0, flow.params);
    return {{jx.v, jy.v, jz.v},
            {jx.d1, jy.d1, jz.d1},
            {jx.d2, jy.d2, jz.d2},
            {jx.d3, jy.d3, jz.d3}};
}

Vec3 flow_position(const FlowModel& flow, double t, const Vec3& r0) {
    return {eval_value(flow.x, t, r0, flow.params), eval_value(flow.y, t, r0, flow.params),
            eval_value(flow.z, t, r0, flow.params)};
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << ": max |v| = " << max_speed << " at t = " << max_speed_t
       << ", r0 = " << max_speed_r0 << "; identity defect = " << max_identity_defect
       << "; min pair separation = " << min_pair_separation
       << (injectivity_flag ? " (collision flagged)" : "");
    return os.str();
}

ValidationReport validate_flow(const FlowModel& flow, double t_begin, double t_end, int n_time,
                               int n_space, const ValidationOptions& opts) {
    ValidationReport report;
    report.min_pair_separation = std::numeric_limits<double>::infinity();

    const std::vector<Vec3> samples = sample_region(flow.support, n_space);
    n_time = std::max(n_time, 2);

    // identity at the initial time: r2(t0, r0) = r0
    for (const Vec3& r0 : samples) {
        const double defect = norm(flow_position(flow, flow.t0, r0) - r0);
        report.max_identity_defect = std::max(report.max_identity_defect, defect);
    }
    report.identity_ok = report.max_identity_defect <= opts.identity_tolerance;

    std::vector<Vec3> positions(samples.size());
    for (int it = 0; it < n_time; ++it) {
        const double t = t_begin + (t_end - t_begin) * it / (n_time - 1);
        for (size_t i = 0; i < samples.size(); ++i) {
            const Kinematics k = kinematics(flow, t, samples[i]);
            positions[i] = k.position;
            const double speed = norm(k.velocity);
            if (speed > report.max_speed) {
                report.max_speed = speed;
                report.max_speed_r0 = samples[i];
                report.max_speed_t = t;
            }
        }
        for (size_t i = 0; i < samples.size(); ++i)
            for (size_t j = i + 1; j < samples.size(); ++j) {
                const double sep = norm(positions[i] - positions[j]);
                report.min_pair_separation = std::min(report.min_pair_separation, sep);
                if (sep < flow.singularity_epsilon) report.injectivity_flag = true;
            }
    }

    report.speed_ok = report.max_speed <= flow.v1 + 1e-12;
    report.pass = report.speed_ok && report.identity_ok && !report.injectivity_flag;
    return report;
}

}  // namespace flowem
