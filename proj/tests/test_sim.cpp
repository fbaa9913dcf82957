#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "v2vsim/csv.hpp"
#include "v2vsim/harness.hpp"
#include "v2vsim/sim.hpp"

using namespace v2vsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario single_vehicle() {
    Scenario s;
    s.name = "single";
    s.duration = 1.0;
    s.network.topology = TopologyKind::Ego;
    s.controller.kind = ControllerKind::Das;
    s.controller.ego_id = 0;
    ScenarioVehicle v;
    v.init.id = 0;
    v.behavior = {BehaviorKind::Profile, SpeedProfile::constant(0.0), 1.0};
    s.vehicles = {v};
    return s;
}

}  // namespace

TEST_CASE("a vehicle with zero command stays put") {
    const auto log = run(single_vehicle());
    CHECK(log.rows.size() == 100);
    for (const auto& r : log.rows) {
        REQUIRE(r.v == 0.0);
        REQUIRE(r.x == 0.0);
        REQUIRE(r.y == 0.0);
        REQUIRE_FALSE(r.gap_to_predecessor.has_value());
    }
    CHECK(log.warnings.empty());
}

TEST_CASE("rows are ordered with one row per vehicle per tick") {
    Scenario s = scenario_fixture("delay_sweep");
    s.duration = 2.0;
    const auto log = run(s);
    REQUIRE(log.rows.size() == 200 * 2);
    for (std::size_t i = 0; i < log.rows.size(); ++i) {
        const auto& r = log.rows[i];
        CHECK(r.t == doctest::Approx((i / 2) * 0.01));
        CHECK(r.vehicle_id == static_cast<int>(i % 2));
    }
}

TEST_CASE("tick order: emission precedes delivery precedes control") {
    // With zero delay the follower must already see the tick-0 message at
    // tick 0: its opening gap exceeds the safe gap, so the very first
    // command is positive. Any other phase order leaves it at zero.
    Scenario s = scenario_fixture("delay_sweep");
    s.network.delay = 0.0;
    s.duration = 0.02;
    s.vehicles[1].init.y = -30.0;
    const auto log = run(s);
    REQUIRE(log.rows.size() == 4);
    CHECK(log.rows[1].vehicle_id == 1);
    CHECK(log.rows[1].a_command > 0.0);
}

TEST_CASE("velocity difference series") {
    Scenario s = scenario_fixture("delay_sweep");
    s.duration = 1.0;
    // freeze both vehicles at constant speeds
    s.vehicles[0].behavior.profile = SpeedProfile::constant(10.0);
    s.vehicles[0].init.v = 10.0;
    s.vehicles[1].behavior.kind = BehaviorKind::Profile;
    s.vehicles[1].behavior.profile = SpeedProfile::constant(8.0);
    s.vehicles[1].init.v = 8.0;
    const auto log = run(s);
    const auto diff = velocity_difference_series(log, 0, 1);
    REQUIRE(diff.size() == 100);
    for (double d : diff) REQUIRE(d == doctest::Approx(2.0).epsilon(1e-9));

    const auto zero = velocity_difference_series(log, 0, 0);
    for (double d : zero) REQUIRE(d == 0.0);

    CHECK_THROWS(velocity_difference_series(log, 0, 99));
}

TEST_CASE("identical runs are byte-identical") {
    Scenario s = scenario_fixture("delay_sweep");
    s.duration = 5.0;
    export_csv(run(s), "/tmp/v2vsim_det_a.csv", true);
    export_csv(run(s), "/tmp/v2vsim_det_b.csv", true);
    CHECK(slurp("/tmp/v2vsim_det_a.csv") == slurp("/tmp/v2vsim_det_b.csv"));
    CHECK(slurp("/tmp/v2vsim_det_a.csv.trace.csv") ==
          slurp("/tmp/v2vsim_det_b.csv.trace.csv"));
}

TEST_CASE("csv export round-trips") {
    Scenario s = scenario_fixture("platoon4");
    s.duration = 1.0;
    const auto log = run(s);
    export_csv(log, "/tmp/v2vsim_roundtrip.csv");
    const auto table = read_csv("/tmp/v2vsim_roundtrip.csv");
    REQUIRE(table.columns.size() == 11);
    CHECK(table.columns[0] == "t");
    CHECK(table.columns[10] == "warning_flag");
    REQUIRE(table.rows.size() == log.rows.size());

    const auto v = table.numeric_column("v");
    REQUIRE(v.size() == log.rows.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        REQUIRE(v[i] == log.rows[i].v);  // full-precision round trip

    // gap column present for followers, absent for the leader
    const auto gaps = table.numeric_column("gap_to_predecessor");
    CHECK(gaps.size() == log.rows.size() / 4 * 3);
}

TEST_CASE("empty log exports a header-only file") {
    SimLog log;
    export_csv(log, "/tmp/v2vsim_empty.csv");
    const auto text = slurp("/tmp/v2vsim_empty.csv");
    CHECK(text ==
          "t,vehicle_id,x,y,yaw,v,a_command,a_applied,"
          "gap_to_predecessor,spacing_error,warning_flag\n");
}

TEST_CASE("export failure names the path") {
    SimLog log;
    CHECK_THROWS_AS(export_csv(log, "/nonexistent_dir/x.csv"),
                    std::runtime_error);
}

TEST_CASE("delay sweep: parallel equals sequential") {
    Scenario base = scenario_fixture("delay_sweep");
    base.duration = 3.0;
    const std::vector<double> delays{0.01, 0.1};
    const auto par = sweep_delay(base, delays, true);
    const auto seq = sweep_delay(base, delays, false);
    REQUIRE(par.size() == seq.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        REQUIRE(par[i].delay == seq[i].delay);
        REQUIRE(par[i].stats.mean == seq[i].stats.mean);
        REQUIRE(par[i].stats.max == seq[i].stats.max);
        REQUIRE(par[i].max_variation == seq[i].max_variation);
    }
}

TEST_CASE("delay sweep rejects a bad base scenario") {
    CHECK_THROWS(sweep_delay(scenario_fixture("stopped_lead"), {0.01}, false));
    const auto single = sweep_delay(scenario_fixture("delay_sweep"), {0.1},
                                    false);
    CHECK(single.size() == 1);
    CHECK(single[0].delay == 0.1);
}

TEST_CASE("no crash in the nominal platoon run") {
    const auto log = run(scenario_fixture("platoon4"));
    for (int id = 1; id <= 3; ++id) {
        const auto gaps = gap_series(log, id);
        for (double g : gaps) REQUIRE(g > 0.0);
    }
}

TEST_CASE("stopped-lead fixture produces warnings and a braking lead") {
    const auto log = run(scenario_fixture("stopped_lead"));
    REQUIRE_FALSE(log.warnings.empty());
    CHECK(log.warnings.front().follower_id == 0);
    CHECK(log.warnings.front().leader_id == 1);
    // the lead eventually stops
    const auto lead_v = speed_series(log, 1);
    CHECK(lead_v.back() == 0.0);
    // warning flag appears on ego rows
    bool flagged = false;
    for (const auto& r : log.rows)
        if (r.vehicle_id == 0 && r.warning_flag) flagged = true;
    CHECK(flagged);
}
