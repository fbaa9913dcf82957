#include "v2vsim/sim.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <stdexcept>

namespace v2vsim {

namespace {

bool finite_state(const VehicleState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.yaw) &&
           std::isfinite(s.v) && std::isfinite(s.a);
}

double bumper_gap(const VehicleState& pred, const VehicleState& self) {
    return distance_between(pred, self) - 0.5 * (pred.length + self.length);
}

}  // namespace

SimLog run(const Scenario& scenario) {
    scenario.validate();

    const std::size_t n = scenario.vehicles.size();
    std::vector<int> ids;
    ids.reserve(n);
    for (const auto& sv : scenario.vehicles) ids.push_back(sv.init.id);

    const bool das_mode = scenario.controller.kind == ControllerKind::Das;
    int ego_index = -1;
    if (das_mode) {
        for (std::size_t i = 0; i < n; ++i)
            if (ids[i] == scenario.controller.ego_id)
                ego_index = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& sv = scenario.vehicles[i];
        if ((sv.behavior.kind == BehaviorKind::StoppedLead ||
             sv.behavior.kind == BehaviorKind::LaneChange) &&
            !das_mode)
            throw std::invalid_argument(
                "run: scripted trigger behaviors require the das controller");
        if (sv.behavior.kind == BehaviorKind::Cacc && i == 0)
            throw std::invalid_argument(
                "run: the front vehicle has no predecessor to follow");
    }

    NetworkModel net =
        scenario.network.topology == TopologyKind::Precedent
            ? NetworkModel::precedent_topology(ids, scenario.network.delay)
            : NetworkModel::ego_topology(ids, scenario.controller.ego_id,
                                         scenario.network.delay,
                                         scenario.network.range);

    std::vector<VehicleState> states;
    states.reserve(n);
    for (const auto& sv : scenario.vehicles) states.push_back(sv.init);

    // Last message per (receiver, sender); zero-order hold between arrivals.
    std::map<std::pair<int, int>, KinematicMessage> latch;
    std::vector<bool> brake_latched(n, false);
    std::vector<std::optional<double>> lateral_latched(n);
    const double ego_lane_offset =
        ego_index >= 0 ? states[ego_index].x : 0.0;

    SimLog log;
    log.dt = scenario.dt;
    log.ticks = static_cast<std::size_t>(
        std::llround(scenario.duration / scenario.dt));
    log.rows.reserve(log.ticks * n);

    for (std::size_t k = 0; k < log.ticks; ++k) {
        const double now = static_cast<double>(k) * scenario.dt;

        // 1. Every vehicle emits its kinematic message.
        std::map<int, std::pair<double, double>> positions;
        for (const auto& s : states) positions[s.id] = {s.x, s.y};
        for (const auto& s : states) {
            KinematicMessage msg{s.id, s.x, s.y, 0.0, s.yaw, s.v, s.a, now};
            net.send(s.id, msg, now, positions);
        }

        // 2+3. Deliver due messages and refresh the per-link latches.
        for (auto& d : net.deliver_due(now)) {
            latch[{d.dst_id, d.msg.sender_id}] = d.msg;
            log.deliveries.push_back(d);
        }

        // 4. Commands.
        std::vector<double> commands(n, 0.0);
        std::vector<std::optional<double>> lateral(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& bhv = scenario.vehicles[i].behavior;
            const VehicleState& s = states[i];
            switch (bhv.kind) {
                case BehaviorKind::Profile:
                    commands[i] =
                        profile_tracking_accel(bhv.profile, s, now, bhv.gain);
                    break;
                case BehaviorKind::Cacc: {
                    auto it = latch.find({s.id, ids[i - 1]});
                    if (it == latch.end()) {
                        commands[i] = 0.0;  // nothing heard yet
                        break;
                    }
                    const KinematicMessage& m = it->second;
                    GapMeasurement g;
                    g.delta_x = std::hypot(m.x - s.x, m.y - s.y) -
                                0.5 * (scenario.vehicles[i - 1].init.length +
                                       s.length);
                    g.delta_v = m.speed - s.v;
                    g.predecessor_accel = m.accel;
                    g.self_v = s.v;
                    g.self_a = s.a;
                    commands[i] = control_accel(scenario.controller.cacc, g);
                    break;
                }
                case BehaviorKind::StoppedLead: {
                    if (!brake_latched[i] && ego_index >= 0 &&
                        stopped_lead_behavior(s, states[ego_index],
                                              scenario.limits))
                        brake_latched[i] = true;
                    commands[i] =
                        brake_latched[i]
                            ? scenario.limits.a_min
                            : profile_tracking_accel(bhv.profile, s, now,
                                                     bhv.gain);
                    break;
                }
                case BehaviorKind::LaneChange: {
                    if (!lateral_latched[i] && ego_index >= 0) {
                        lateral_latched[i] = lane_change_behavior(
                            s, states[ego_index], ego_lane_offset);
                    }
                    lateral[i] = lateral_latched[i];
                    commands[i] =
                        profile_tracking_accel(bhv.profile, s, now, bhv.gain);
                    break;
                }
            }
        }

        // DAS runs on the ego's ground truth plus message-derived states of
        // every vehicle it has heard from.
        std::vector<WarningEvent> tick_warnings;
        if (das_mode && ego_index >= 0) {
            std::vector<VehicleState> view{states[ego_index]};
            for (std::size_t i = 0; i < n; ++i) {
                if (static_cast<int>(i) == ego_index) continue;
                auto it = latch.find({scenario.controller.ego_id, ids[i]});
                if (it == latch.end()) continue;
                const KinematicMessage& m = it->second;
                VehicleState derived = scenario.vehicles[i].init;
                derived.x = m.x;
                derived.y = m.y;
                derived.yaw = m.yaw;
                derived.v = m.speed;
                derived.a = m.accel;
                view.push_back(derived);
            }
            tick_warnings =
                evaluate_all(view, scenario.controller.das, now);
            log.warnings.insert(log.warnings.end(), tick_warnings.begin(),
                                tick_warnings.end());
        }

        // 5+6. Integrate, then log the tick (pre-step state + commands).
        std::vector<VehicleState> next_states = states;
        for (std::size_t i = 0; i < n; ++i) {
            const VehicleState& s = states[i];
            VehicleState next = step(s, commands[i], lateral[i], scenario.dt,
                                     scenario.limits);
            if (!finite_state(next))
                throw std::runtime_error(fmt::format(
                    "run: non-finite state at tick {} vehicle {}", k, s.id));

            LogRow row;
            row.t = now;
            row.vehicle_id = s.id;
            row.x = s.x;
            row.y = s.y;
            row.yaw = s.yaw;
            row.v = s.v;
            row.a_command = commands[i];
            row.a_applied = next.a;
            if (scenario.vehicles[i].behavior.kind == BehaviorKind::Cacc) {
                const double gap = bumper_gap(states[i - 1], s);
                row.gap_to_predecessor = gap;
                row.spacing_error =
                    gap - safe_gap(scenario.controller.cacc, s.v);
            }
            for (const auto& w : tick_warnings)
                if (w.follower_id == s.id) row.warning_flag = 1;
            log.rows.push_back(row);
            next_states[i] = next;
        }
        states = std::move(next_states);
    }
    return log;
}

namespace {

std::vector<double> series(const SimLog& log, int id,
                           double (*pick)(const LogRow&), bool optional_field,
                           const char* what) {
    std::vector<double> out;
    bool found = false;
    for (const auto& r : log.rows) {
        if (r.vehicle_id != id) continue;
        found = true;
        out.push_back(pick(r));
    }
    if (!found)
        throw std::invalid_argument(
            fmt::format("{}: unknown vehicle id {}", what, id));
    (void)optional_field;
    return out;
}

}  // namespace

std::vector<double> velocity_difference_series(const SimLog& log, int id_a,
                                               int id_b) {
    auto a = speed_series(log, id_a);
    auto b = speed_series(log, id_b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::vector<double> speed_series(const SimLog& log, int id) {
    return series(
        log, id, [](const LogRow& r) { return r.v; }, false,
        "speed_series");
}

std::vector<double> gap_series(const SimLog& log, int id) {
    std::vector<double> out;
    bool found = false;
    for (const auto& r : log.rows) {
        if (r.vehicle_id != id) continue;
        found = true;
        if (r.gap_to_predecessor) out.push_back(*r.gap_to_predecessor);
    }
    if (!found)
        throw std::invalid_argument(
            fmt::format("gap_series: unknown vehicle id {}", id));
    return out;
}

std::vector<double> spacing_error_series(const SimLog& log, int id) {
    std::vector<double> out;
    bool found = false;
    for (const auto& r : log.rows) {
        if (r.vehicle_id != id) continue;
        found = true;
        if (r.spacing_error) out.push_back(*r.spacing_error);
    }
    if (!found)
        throw std::invalid_argument(
            fmt::format("spacing_error_series: unknown vehicle id {}", id));
    return out;
}

}  // namespace v2vsim
