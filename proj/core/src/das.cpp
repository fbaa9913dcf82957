#include "v2vsim/das.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace v2vsim {

void DasParams::validate() const {
    if (!(beta > 0.0 && beta < M_PI && d_mls >= 0.0 && d_min > 0.0 &&
          t_r >= 0.0 && a_f > 0.0 && a_l > 0.0))
        throw std::invalid_argument("invalid DAS parameters");
}

bool orientation_aligned(double theta_a, double theta_b, double beta) {
    const double diff = std::abs(normalize_angle(theta_a - theta_b));
    return diff < beta;
}

PairGeometry project(const VehicleState& a, const VehicleState& b) {
    // A' = A + (sin yaw, cos yaw); the direction is unit so the projection
    // denominator is exactly 1.
    const double hx = std::sin(a.yaw);
    const double hy = std::cos(a.yaw);
    PairGeometry g;
    g.u = (b.x - a.x) * hx + (b.y - a.y) * hy;
    g.px = a.x + g.u * hx;
    g.py = a.y + g.u * hy;
    g.d_p = std::hypot(g.px - b.x, g.py - b.y);
    g.d_a = std::hypot(g.px - a.x, g.py - a.y);
    return g;
}

double lateral_safety(const DasParams& params, double width_a, double width_b) {
    if (!(width_a > 0.0 && width_b > 0.0))
        throw std::invalid_argument("lateral_safety: non-positive width");
    return 0.5 * width_a + 0.5 * width_b + params.d_mls;
}

Role classify_role(const VehicleState& a, double px, double py) {
    const double apx = px - a.x;
    const double apy = py - a.y;
    if (a.v <= 0.0 || (apx == 0.0 && apy == 0.0)) return Role::Indeterminate;
    // phi < pi/2 iff AP . V_A > 0; no acos needed.
    const double dot = apx * a.v * std::sin(a.yaw) + apy * a.v * std::cos(a.yaw);
    return dot > 0.0 ? Role::Follower : Role::Leader;
}

double safety_distance(const DasParams& params, double v_f, double v_l) {
    if (v_f < 0.0 || v_l < 0.0)
        throw std::invalid_argument("safety_distance: negative speed");
    const double raw = params.d_min + v_f * params.t_r +
                       0.5 * (v_f * v_f / params.a_f - v_l * v_l / params.a_l);
    return std::max(raw, params.d_min);
}

std::optional<WarningEvent> evaluate_pair(const VehicleState& a,
                                          const VehicleState& b,
                                          const DasParams& params, double now) {
    params.validate();
    if (!orientation_aligned(a.yaw, b.yaw, params.beta)) return std::nullopt;

    const PairGeometry g = project(a, b);
    if (g.d_p >= lateral_safety(params, a.width, b.width)) return std::nullopt;

    const Role role_a = classify_role(a, g.px, g.py);
    if (role_a == Role::Indeterminate) return std::nullopt;

    const VehicleState& follower = role_a == Role::Follower ? a : b;
    const VehicleState& leader = role_a == Role::Follower ? b : a;
    const double d_sf = safety_distance(params, follower.v, leader.v);
    if (g.d_a < d_sf) {
        return WarningEvent{now, follower.id, leader.id, g.d_a, d_sf};
    }
    return std::nullopt;
}

std::vector<WarningEvent> evaluate_all(const std::vector<VehicleState>& vehicles,
                                       const DasParams& params, double now) {
    std::set<int> ids;
    for (const auto& v : vehicles) {
        if (!ids.insert(v.id).second)
            throw std::invalid_argument("evaluate_all: duplicate vehicle id");
    }
    std::vector<WarningEvent> out;
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
        for (std::size_t j = i + 1; j < vehicles.size(); ++j) {
            if (auto w = evaluate_pair(vehicles[i], vehicles[j], params, now)) {
                out.push_back(*w);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const WarningEvent& l,
                                         const WarningEvent& r) {
        return std::tie(l.follower_id, l.leader_id) <
               std::tie(r.follower_id, r.leader_id);
    });
    return out;
}

}  // namespace v2vsim
