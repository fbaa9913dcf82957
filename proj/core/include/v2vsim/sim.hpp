#pragma once

#include <optional>
#include <vector>

#include "v2vsim/das.hpp"
#include "v2vsim/network.hpp"
#include "v2vsim/scenario.hpp"

namespace v2vsim {

struct LogRow {
    double t = 0.0;
    int vehicle_id = 0;
    double x = 0.0;
    double y = 0.0;
    double yaw = 0.0;
    double v = 0.0;
    double a_command = 0.0;
    double a_applied = 0.0;
    std::optional<double> gap_to_predecessor;
    std::optional<double> spacing_error;
    int warning_flag = 0;
};

struct SimLog {
    std::vector<LogRow> rows;  // ordered by (t, vehicle_id), one per tick
    std::vector<WarningEvent> warnings;
    std::vector<Delivery> deliveries;
    double dt = 0.0;
    std::size_t ticks = 0;
};

// One deterministic pass over the scenario. Tick order: emit messages,
// deliver due messages, update controller latches, compute commands,
// integrate, log. Throws on any non-finite state, naming tick and vehicle.
SimLog run(const Scenario& scenario);

// Per-tick v_a - v_b in tick order.
std::vector<double> velocity_difference_series(const SimLog& log, int id_a,
                                               int id_b);

std::vector<double> speed_series(const SimLog& log, int id);
std::vector<double> gap_series(const SimLog& log, int id);
std::vector<double> spacing_error_series(const SimLog& log, int id);

}  // namespace v2vsim
