#include "v2vsim/harness.hpp"

#include <fmt/format.h>

#include <future>
#include <stdexcept>

namespace v2vsim {

namespace {

DelaySweepRow run_one(const Scenario& base, double delay) {
    Scenario s = base;
    s.network.delay = delay;
    try {
        const SimLog log = run(s);
        const int leader = s.vehicles.front().init.id;
        const int follower = s.vehicles[1].init.id;
        const auto diff = velocity_difference_series(log, leader, follower);
        return {delay, summarize(diff), max_abs(diff)};
    } catch (const std::exception& e) {
        throw std::runtime_error(
            fmt::format("sweep_delay: delay {}: {}", delay, e.what()));
    }
}

}  // namespace

std::vector<DelaySweepRow> sweep_delay(const Scenario& base,
                                       const std::vector<double>& delays,
                                       bool parallel) {
    if (base.vehicles.size() < 2 ||
        base.network.topology != TopologyKind::Precedent)
        throw std::invalid_argument(
            "sweep_delay: base scenario must be a precedent chain of >= 2 "
            "vehicles");
    std::vector<DelaySweepRow> rows;
    rows.reserve(delays.size());
    if (parallel) {
        std::vector<std::future<DelaySweepRow>> futures;
        futures.reserve(delays.size());
        for (double d : delays) {
            futures.push_back(std::async(std::launch::async, run_one,
                                         std::cref(base), d));
        }
        for (auto& f : futures) rows.push_back(f.get());
    } else {
        for (double d : delays) rows.push_back(run_one(base, d));
    }
    return rows;
}

}  // namespace v2vsim
