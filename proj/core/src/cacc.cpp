#include "v2vsim/cacc.hpp"

namespace v2vsim {

double safe_gap(const CaccParams& p, double v) {
    if (v < 0.0) throw std::invalid_argument("safe_gap: negative speed");
    return p.headway_h * v + p.standstill_d;
}

SpacingError spacing_error(const CaccParams& p, const GapMeasurement& g) {
    return {g.delta_x - (p.headway_h * g.self_v + p.standstill_d),
            g.delta_v - p.headway_h * g.self_a};
}

double control_accel(const CaccParams& p, const GapMeasurement& g) {
    p.validate();
    const double e =
        g.delta_x - p.headway_h * g.self_v - p.standstill_d;
    return (g.predecessor_accel + p.k_p * e + p.k_d * g.delta_v) /
           (1.0 + p.k_d * p.headway_h);
}

double pd_residual(const CaccParams& p, const GapMeasurement& g,
                   double a_candidate) {
    const double e =
        g.delta_x - p.headway_h * g.self_v - p.standstill_d;
    return (a_candidate - g.predecessor_accel) -
           (p.k_p * e + p.k_d * (g.delta_v - p.headway_h * a_candidate));
}

}  // namespace v2vsim
