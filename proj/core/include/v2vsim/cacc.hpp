#pragma once

#include <stdexcept>

namespace v2vsim {

struct CaccParams {
    double headway_h = 0.5;    // s
    double standstill_d = 2.0; // m
    double k_p = 0.2;          // 1/s^2
    double k_d = 0.7;          // 1/s

    void validate() const {
        if (!(headway_h > 0.0 && standstill_d > 0.0 && k_p > 0.0 &&
              k_d > 0.0 && 1.0 + k_d * headway_h > 0.0))
            throw std::invalid_argument("invalid CACC parameters");
    }
};

// Controller inputs for one follower. delta_x is the bumper gap to the
// predecessor; predecessor quantities come from the last received message.
struct GapMeasurement {
    double delta_x = 0.0;           // m
    double delta_v = 0.0;           // v_pred - v_self, m/s
    double predecessor_accel = 0.0; // m/s^2
    double self_v = 0.0;            // m/s
    double self_a = 0.0;            // m/s^2
};

// Desired gap h*v + d.
double safe_gap(const CaccParams& p, double v);

// (e, e_dot) = (delta_x - safe_gap(v_self), delta_v - h * a_self)
struct SpacingError {
    double e;
    double e_dot;
};
SpacingError spacing_error(const CaccParams& p, const GapMeasurement& g);

// Recursive acceleration command
//   a = (a_pred + Kp*(dx - h*v - d) + Kd*dv) / (1 + Kd*h)
// Unclamped; actuator limits apply downstream.
double control_accel(const CaccParams& p, const GapMeasurement& g);

// Residual of the PD form; zero iff a_candidate is the self-consistent
// solution returned by control_accel.
double pd_residual(const CaccParams& p, const GapMeasurement& g,
                   double a_candidate);

}  // namespace v2vsim
