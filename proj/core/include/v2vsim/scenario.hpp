#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "v2vsim/cacc.hpp"
#include "v2vsim/das.hpp"
#include "v2vsim/vehicle.hpp"

namespace v2vsim {

// Piecewise-linear speed profile, clamped outside the breakpoint range.
struct SpeedProfile {
    std::vector<std::pair<double, double>> breakpoints;  // (t, v), t increasing

    double eval(double t) const;
    void validate() const;

    static SpeedProfile constant(double v);
};

// The leader trapezoid profile: 0->37 m/s over 10 s, down to 8 m/s by 15 s,
// back to 37 m/s by 25 s, down to 3 m/s by 33 s.
SpeedProfile leader_profile_paper();

// Proportional tracking: a = gain * (profile(t) - v). Clamped downstream.
double profile_tracking_accel(const SpeedProfile& profile,
                              const VehicleState& state, double t, double gain);

// Deterministic stand-in for a human driver; same law as profile tracking.
double scripted_ego_driver(const SpeedProfile& profile,
                           const VehicleState& state, double t, double gain);

// Full brake once the ego is within 30 m longitudinally behind the lead.
// Latching is the caller's job; this is the instantaneous trigger.
std::optional<double> stopped_lead_behavior(const VehicleState& lead,
                                            const VehicleState& ego,
                                            const ActuatorLimits& limits);

// Lateral target toward the ego's lane once the ego is within 15 m
// longitudinally behind the truck in a different lane.
std::optional<double> lane_change_behavior(const VehicleState& truck,
                                           const VehicleState& ego,
                                           double ego_lane_offset);

enum class BehaviorKind { Profile, Cacc, StoppedLead, LaneChange };
enum class TopologyKind { Precedent, Ego };
enum class ControllerKind { Cacc, Das };

struct BehaviorSpec {
    BehaviorKind kind = BehaviorKind::Profile;
    SpeedProfile profile;  // tracked profile; cruise speed for scripted roles
    double gain = 1.0;
};

struct NetworkSpec {
    TopologyKind topology = TopologyKind::Precedent;
    double delay = 0.01;
    double range = 300.0;  // used by the ego topology only
};

struct ControllerSpec {
    ControllerKind kind = ControllerKind::Cacc;
    CaccParams cacc;
    DasParams das;
    int ego_id = -1;  // das only
};

struct ScenarioVehicle {
    VehicleState init;
    BehaviorSpec behavior;
};

struct Scenario {
    std::string name;
    std::vector<ScenarioVehicle> vehicles;  // ordered front-to-back
    double duration = 10.0;
    double dt = 0.01;
    NetworkSpec network;
    ControllerSpec controller;
    std::uint64_t rng_seed = 0;
    ActuatorLimits limits;

    void validate() const;
};

// Strict sectioned key=value format; unknown sections or keys are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Built-in fixtures: delay_sweep, platoon4, stopped_lead, lane_change.
Scenario scenario_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace v2vsim
