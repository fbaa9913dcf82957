#pragma once

#include <string>
#include <vector>

#include "v2vsim/sim.hpp"
#include "v2vsim/stats.hpp"

namespace v2vsim {

struct DelaySweepRow {
    double delay = 0.0;
    SummaryStats stats;     // of the signed per-tick leader-follower difference
    double max_variation = 0.0;  // max |v_L - v_F|
};

// One independent run per delay on the 2-vehicle precedent fixture; rows come
// back in the order of `delays`. Parallel and sequential execution produce
// identical tables.
std::vector<DelaySweepRow> sweep_delay(const Scenario& base,
                                       const std::vector<double>& delays,
                                       bool parallel = true);

}  // namespace v2vsim
