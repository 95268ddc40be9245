#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "flowem/expr.hpp"
#include "flowem/flow.hpp"
#include "flowem/geometry.hpp"

namespace flowem {

struct Atom {
    Vec3 r0;
    double weight = 0.0;
};

struct QuadratureSpec {
    int cells = 4;  // cells per axis
    int nodes = 4;  // Gauss nodes per cell per axis
};

/// Precomputed quadrature node for the density part: position, geometric
/// weight (cell volume factors times Gauss weights, zero outside a ball
/// region), and the density value at the node.
struct DensityNode {
    Vec3 r0;
    double weight = 0.0;
    double rho = 0.0;
};

/// Signed measure over the support: finite point atoms plus an optional
/// density with a tensor-product Gauss-Legendre rule.  Balls integrate over
/// the bounding box with an indicator weight, which drops the rule's order
/// at the ball boundary.  Integration runs in a fixed deterministic order
/// (atoms first, then cells lexicographically) with compensated summation.
class ChargeMeasure {
  public:
    ChargeMeasure() = default;

    /// Atoms-only measure.
    ChargeMeasure(std::vector<Atom> atoms, SupportRegion region);

    /// Atoms plus density (expression over x0, y0, z0; must not reference t).
    /// The region must be a box or a ball when a density is present.
    ChargeMeasure(std::vector<Atom> atoms, ExprPtr density, ParamMap density_params,
                  SupportRegion region, QuadratureSpec quad);

    double integrate_scalar(const std::function<double(const Vec3&)>& f) const;
    Vec3 integrate_vector(const std::function<Vec3(const Vec3&)>& f) const;

    /// (total charge, total variation) = (sum w + integral rho, sum |w| + integral |rho|).
    std::pair<double, double> totals() const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityNode>& density_nodes() const { return nodes_; }
    bool has_density() const { return static_cast<bool>(density_); }
    const ExprPtr& density() const { return density_; }
    const ParamMap& density_params() const { return density_params_; }
    const SupportRegion& region() const { return region_; }
    const QuadratureSpec& quadrature() const { return quad_; }

    /// Same atoms/nodes with every weight and density value scaled by s.
    ChargeMeasure scaled(double s) const;

  private:
    std::vector<Atom> atoms_;
    ExprPtr density_;
    ParamMap density_params_;
    SupportRegion region_ = PointSetRegion{{Vec3{}}};
    QuadratureSpec quad_;
    std::vector<DensityNode> nodes_;

    void build_nodes();
};

/// The measure transported along the flow to the later initial time t_target:
/// integration against it evaluates the integrand at the transported points
/// P(r0) = r2(t_target, r0) while keeping the base weights, so
/// integral(f, pushforward) = integral(f o P, base) by construction.
class PushforwardMeasure {
  public:
    PushforwardMeasure(const ChargeMeasure& base, const FlowModel& flow, double t_target);

    double integrate_scalar(const std::function<double(const Vec3&)>& f) const;
    Vec3 integrate_vector(const std::function<Vec3(const Vec3&)>& f) const;

    /// Atoms at their transported positions, same weights.
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityNode>& density_nodes() const { return nodes_; }
    double target_time() const { return t_target_; }

  private:
    std::vector<Atom> atoms_;
    std::vector<DensityNode> nodes_;
    double t_target_;
};

PushforwardMeasure pushforward(const ChargeMeasure& base, const FlowModel& flow, double t_target);

}  // namespace flowem
