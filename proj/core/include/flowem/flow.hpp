#pragma once

#include <string>
#include <variant>
#include <vector>

#include "flowem/expr.hpp"
#include "flowem/geometry.hpp"

namespace flowem {

struct BoxRegion {
    Vec3 lo, hi;
};

struct BallRegion {
    Vec3 center;
    double radius = 1.0;
};

struct PointSetRegion {
    std::vector<Vec3> points;
};

/// Compact initial support of the matter.
using SupportRegion = std::variant<BoxRegion, BallRegion, PointSetRegion>;

bool region_contains(const SupportRegion& region, const Vec3& p, double slack = 1e-12);

/// Deterministic sample of roughly `n` points covering the region (all points
/// for a point set; a lattice including corners for boxes and balls).
std::vector<Vec3> sample_region(const SupportRegion& region, int n);

/// Axis-aligned bounding box of the region.
BoxRegion region_bounds(const SupportRegion& region);

/// Throws SceneError if the region is degenerate (box with lo > hi, ball with
/// radius <= 0, empty or duplicated point set).
void check_region(const SupportRegion& region);

/// Trajectory family r2(t, r0): one expression per component over
/// t, x0, y0, z0 and bound parameters, with initial support, initial time,
/// and a declared speed bound v1 < 1.
struct FlowModel {
    ExprPtr x, y, z;
    ParamMap params;
    SupportRegion support = PointSetRegion{{Vec3{}}};
    double t0 = 0.0;
    double v1 = 0.5;
    double singularity_epsilon = 1e-9;
};

struct Kinematics {
    Vec3 position, velocity, acceleration, jerk;
};

/// Per-component Taylor jets of the trajectory at (t, r0); throws if r0 lies
/// outside the support or the expressions hit a domain error.
Kinematics kinematics(const FlowModel& flow, double t, const Vec3& r0);

/// Position only (no derivative propagation); used in solver inner loops.
Vec3 flow_position(const FlowModel& flow, double t, const Vec3& r0);

struct ValidationReport {
    double max_speed = 0.0;
    Vec3 max_speed_r0;
    double max_speed_t = 0.0;
    double max_identity_defect = 0.0;  // max |r2(t0, r0) - r0| over samples
    double min_pair_separation = 0.0;  // +inf when fewer than two samples
    bool injectivity_flag = false;     // a sampled pair collided below epsilon
    bool speed_ok = true;
    bool identity_ok = true;
    bool pass = true;

    std::string summary() const;
};

struct ValidationOptions {
    double identity_tolerance = 1e-9;
};

/// Sample the regularity conditions over [t_begin, t_end] with n_time time
/// samples and roughly n_space support samples.  Failures are reported, not
/// thrown.
ValidationReport validate_flow(const FlowModel& flow, double t_begin, double t_end, int n_time,
                               int n_space, const ValidationOptions& opts = {});

}  // namespace flowem
