#pragma once

#include <optional>
#include <vector>

#include "v2vsim/vehicle.hpp"

namespace v2vsim {

struct DasParams {
    double beta = 0.17;   // rad, orientation alignment threshold
    double d_mls = 0.5;   // m, minimal lateral safety margin
    double d_min = 2.0;   // m, minimal standstill separation
    double t_r = 1.0;     // s, driver reaction time
    double a_f = 6.0;     // m/s^2, follower max deceleration magnitude
    double a_l = 6.0;     // m/s^2, leader max deceleration magnitude

    void validate() const;
};

enum class Role { Follower, Leader, Indeterminate };

// Projection of B onto A's heading line. P is the foot point, u the signed
// parameter along the (unit) heading, d_p = |P - B|, d_a = |P - A|.
struct PairGeometry {
    double px = 0.0;
    double py = 0.0;
    double u = 0.0;
    double d_p = 0.0;
    double d_a = 0.0;
    // |A' - A| used in the projection. The heading vector is unit by
    // construction, so this is algebraically exact 1 and no division happens.
    double denom = 1.0;
};

struct WarningEvent {
    double time = 0.0;
    int follower_id = 0;
    int leader_id = 0;
    double d_a = 0.0;
    double d_sf = 0.0;
};

// True iff the shortest-arc angular difference is < beta.
bool orientation_aligned(double theta_a, double theta_b, double beta);

PairGeometry project(const VehicleState& a, const VehicleState& b);

// d_ls = w_A/2 + w_B/2 + d_mls
double lateral_safety(const DasParams& params, double width_a, double width_b);

// Follower iff the projection point lies ahead along A's velocity vector.
// Indeterminate when A is stopped or P coincides with A.
Role classify_role(const VehicleState& a, double px, double py);

// d_sf = d_min + v_f*t_r + (v_f^2/a_f - v_l^2/a_l)/2, floored at d_min.
double safety_distance(const DasParams& params, double v_f, double v_l);

// Full case-following check for one pair: orientation gate, same-lane gate
// (d_p < d_ls), role assignment, then d_a < d_sf.
std::optional<WarningEvent> evaluate_pair(const VehicleState& a,
                                          const VehicleState& b,
                                          const DasParams& params, double now);

// Every unordered pair once; output sorted by (follower_id, leader_id).
std::vector<WarningEvent> evaluate_all(const std::vector<VehicleState>& vehicles,
                                       const DasParams& params, double now);

}  // namespace v2vsim
