#include "v2vsim/vehicle.hpp"

#include <algorithm>

namespace v2vsim {

double normalize_angle(double yaw) {
    yaw = std::remainder(yaw, 2.0 * M_PI);
    if (yaw <= -M_PI) yaw += 2.0 * M_PI;
    return yaw;
}

namespace {

bool finite_state(const VehicleState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.yaw) &&
           std::isfinite(s.v) && std::isfinite(s.a);
}

}  // namespace

VehicleState step(const VehicleState& state, double commanded_accel,
                  std::optional<double> lateral_target, double dt,
                  const ActuatorLimits& limits) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    if (!finite_state(state) || !std::isfinite(commanded_accel) ||
        (lateral_target && !std::isfinite(*lateral_target))) {
        throw std::invalid_argument("step: non-finite input");
    }

    double a = std::clamp(commanded_accel, limits.a_min, limits.a_max);
    double v_next = state.v + a * dt;
    if (v_next < 0.0) {
        v_next = 0.0;
        a = -state.v / dt;  // the deceleration actually realized
        if (state.v == 0.0) a = 0.0;
    }

    VehicleState out = state;
    out.v = v_next;
    out.a = a;

    if (lateral_target) {
        const double rate = kLaneWidth / limits.lane_blend_duration;
        const double remaining = *lateral_target - state.x;
        const double d_lat =
            std::copysign(std::min(std::abs(remaining), rate * dt), remaining);
        out.x = state.x + d_lat;
        out.y = state.y + v_next * dt;
        out.yaw = normalize_angle(std::atan2(d_lat, v_next * dt));
        if (v_next == 0.0 && d_lat == 0.0) out.yaw = state.yaw;
    } else {
        out.x = state.x + v_next * dt * std::sin(state.yaw);
        out.y = state.y + v_next * dt * std::cos(state.yaw);
    }
    return out;
}

double distance_between(const VehicleState& s1, const VehicleState& s2) {
    return std::hypot(s1.x - s2.x, s1.y - s2.y);
}

}  // namespace v2vsim
