#include "flowem/measure.hpp"

#include <cmath>

#include "flowem/errors.hpp"
#include "flowem/quadrature.hpp"

namespace flowem {

ChargeMeasure::ChargeMeasure(std::vector<Atom> atoms, SupportRegion region)
    : atoms_(std::move(atoms)), region_(std::move(region)) {
    check_region(region_);
    for (const Atom& a : atoms_)
        if (!region_contains(region_, a.r0))
            throw SceneError("atom lies outside the support region");
}

ChargeMeasure::ChargeMeasure(std::vector<Atom> atoms, ExprPtr density, ParamMap density_params,
                             SupportRegion region, QuadratureSpec quad)
    : atoms_(std::move(atoms)),
      density_(std::move(density)),
      density_params_(std::move(density_params)),
      region_(std::move(region)),
      quad_(quad) {
    check_region(region_);
    for (const Atom& a : atoms_)
        if (!region_contains(region_, a.r0))
            throw SceneError("atom lies outside the support region");
    if (density_) {
        if (depends_on_time(density_))
            throw SceneError("density expression must not reference t");
        if (std::holds_alternative<PointSetRegion>(region_))
            throw SceneError("density requires a box or ball support region");
        if (quad_.cells < 1 || quad_.nodes < 1)
            throw SceneError("quadrature cells and nodes must be >= 1");
        build_nodes();
    }
}

void ChargeMeasure::build_nodes() {
    const BoxRegion box = region_bounds(region_);
    const BallRegion* ball = std::get_if<BallRegion>(&region_);
    const std::vector<GaussNode> rule = gauss_legendre(quad_.nodes);
    const int m = quad_.cells;
    const Vec3 cell_size = (box.hi - box.lo) / static_cast<double>(m);
    const double jac = cell_size.x * cell_size.y * cell_size.z / 8.0;  // d(cell)/d([-1,1]^3)

    nodes_.clear();
    nodes_.reserve(static_cast<size_t>(m) * m * m * rule.size() * rule.size() * rule.size());
    for (int cx = 0; cx < m; ++cx)
        for (int cy = 0; cy < m; ++cy)
            for (int cz = 0; cz < m; ++cz) {
                const Vec3 lo = box.lo + Vec3{cell_size.x * cx, cell_size.y * cy, cell_size.z * cz};
                for (const GaussNode& nx : rule)
                    for (const GaussNode& ny : rule)
                        for (const GaussNode& nz : rule) {
                            DensityNode node;
                            node.r0 = {lo.x + 0.5 * (nx.x + 1.0) * cell_size.x,
                                       lo.y + 0.5 * (ny.x + 1.0) * cell_size.y,
                                       lo.z + 0.5 * (nz.x + 1.0) * cell_size.z};
                            node.weight = nx.w * ny.w * nz.w * jac;
                            if (ball && norm(node.r0 - ball->center) > ball->radius)
                                node.weight = 0.0;
                            node.rho = eval_value(density_, 0.0, node.r0, density_params_);
                            nodes_.push_back(node);
                        }
    }
}

double ChargeMeasure::integrate_scalar(const std::function<double(const Vec3&)>& f) const {
    KahanSum sum;
    for (const Atom& a : atoms_) sum.add(a.weight * f(a.r0));
    for (const DensityNode& n : nodes_)
        if (n.weight != 0.0) sum.add(n.weight * n.rho * f(n.r0));
    return sum.value();
}

Vec3 ChargeMeasure::integrate_vector(const std::function<Vec3(const Vec3&)>& f) const {
    KahanSum sx, sy, sz;
    auto accumulate = [&](double w, const Vec3& value) {
        sx.add(w * value.x);
        sy.add(w * value.y);
        sz.add(w * value.z);
    };
    for (const Atom& a : atoms_) accumulate(a.weight, f(a.r0));
    for (const DensityNode& n : nodes_)
        if (n.weight != 0.0) accumulate(n.weight * n.rho, f(n.r0));
    return {sx.value(), sy.value(), sz.value()};
}

std::pair<double, double> ChargeMeasure::totals() const {
    KahanSum charge, variation;
    for (const Atom& a : atoms_) {
        charge.add(a.weight);
        variation.add(std::abs(a.weight));
    }
    for (const DensityNode& n : nodes_) {
        if (n.weight == 0.0) continue;
        charge.add(n.weight * n.rho);
        variation.add(n.weight * std::abs(n.rho));
    }
    return {charge.value(), variation.value()};
}

ChargeMeasure ChargeMeasure::scaled(double s) const {
    ChargeMeasure out = *this;
    for (Atom& a : out.atoms_) a.weight *= s;
    for (DensityNode& n : out.nodes_) n.rho *= s;
    return out;
}

PushforwardMeasure::PushforwardMeasure(const ChargeMeasure& base, const FlowModel& flow,
                                       double t_target)
    : t_target_(t_target) {
    atoms_.reserve(base.atoms().size());
    for (const Atom& a : base.atoms()) atoms_.push_back({flow_position(flow, t_target, a.r0), a.weight});
    nodes_.reserve(base.density_nodes().size());
    for (const DensityNode& n : base.density_nodes()) {
        DensityNode moved = n;
        if (n.weight != 0.0) moved.r0 = flow_position(flow, t_target, n.r0);
        nodes_.push_back(moved);
    }
}

double PushforwardMeasure::integrate_scalar(const std::function<double(const Vec3&)>& f) const {
    KahanSum sum;
    for (const Atom& a : atoms_) sum.add(a.weight * f(a.r0));
    for (const DensityNode& n : nodes_)
        if (n.weight != 0.0) sum.add(n.weight * n.rho * f(n.r0));
    return sum.value();
}

Vec3 PushforwardMeasure::integrate_vector(const std::function<Vec3(const Vec3&)>& f) const {
    KahanSum sx, sy, sz;
    auto accumulate = [&](double w, const Vec3& value) {
        sx.add(w * value.x);
        sy.add(w * value.y);
        sz.add(w * value.z);
    };
    for (const Atom& a : atoms_) accumulate(a.weight, f(a.r0));
    for (const DensityNode& n : nodes_)
        if (n.weight != 0.0) accumulate(n.weight * n.rho, f(n.r0));
    return {sx.value(), sy.value(), sz.value()};
}

PushforwardMeasure pushforward(const ChargeMeasure& base, const FlowModel& flow, double t_target) {
    return PushforwardMeasure(base, flow, t_target);
}

}  // namespace flowem
