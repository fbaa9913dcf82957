#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace v2vsim {

// Heading convention: the unit heading vector is (sin yaw, cos yaw),
// i.e. yaw = 0 points along +y. Yaw is kept in (-pi, pi].
struct VehicleState {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double yaw = 0.0;
    double v = 0.0;   // longitudinal speed, >= 0
    double a = 0.0;   // acceleration applied at the last step
    double width = 1.8;
    double length = 4.5;
};

struct ActuatorLimits {
    double a_max = 6.0;    // m/s^2
    double a_min = -8.0;   // m/s^2, negative
    double lane_blend_duration = 2.0;  // seconds for a single lane change
};

// Straight parallel lanes along +y; lane centerlines are x offsets.
inline constexpr double kLaneWidth = 3.5;

double normalize_angle(double yaw);

// One fixed-step semi-implicit Euler update. lateral_target, when set, is the
// absolute x of the target lane centerline; the offset blends linearly at
// kLaneWidth / lane_blend_duration and yaw tracks the instantaneous motion
// direction (lanes are assumed to run along +y while a blend is active).
VehicleState step(const VehicleState& state, double commanded_accel,
                  std::optional<double> lateral_target, double dt,
                  const ActuatorLimits& limits);

double distance_between(const VehicleState& s1, const VehicleState& s2);

}  // namespace v2vsim
