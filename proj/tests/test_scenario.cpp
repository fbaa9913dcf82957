#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "v2vsim/scenario.hpp"

using namespace v2vsim;

TEST_CASE("paper leader profile breakpoints") {
    const auto p = leader_profile_paper();
    const std::vector<std::pair<double, double>> expected{
        {0.0, 0.0}, {10.0, 37.0}, {15.0, 8.0}, {25.0, 37.0}, {33.0, 3.0}};
    CHECK(p.breakpoints == expected);
    CHECK(p.eval(10.0) == 37.0);
    CHECK(p.eval(33.0) == 3.0);
    CHECK(p.eval(5.0) == doctest::Approx(18.5));
    // clamped at the ends
    CHECK(p.eval(-1.0) == 0.0);
    CHECK(p.eval(100.0) == 3.0);
}

TEST_CASE("profile evaluation hits breakpoints exactly") {
    const auto p = leader_profile_paper();
    for (const auto& [t, v] : p.breakpoints) CHECK(p.eval(t) == v);
}

TEST_CASE("profile validation") {
    SpeedProfile bad{{{0.0, 1.0}, {0.0, 2.0}}};
    CHECK_THROWS(bad.validate());
    SpeedProfile neg{{{0.0, -1.0}}};
    CHECK_THROWS(neg.validate());
    CHECK_THROWS(SpeedProfile{}.eval(0.0));
}

TEST_CASE("profile tracking accel") {
    VehicleState s;
    s.v = 27.0;
    const auto p = leader_profile_paper();
    CHECK(profile_tracking_accel(p, s, 10.0, 1.0) == doctest::Approx(10.0));
    s.v = p.eval(4.0);
    CHECK(profile_tracking_accel(p, s, 4.0, 1.0) == 0.0);
    CHECK_THROWS(profile_tracking_accel(p, s, 0.0, 0.0));
}

TEST_CASE("proportional tracking converges exponentially") {
    const auto p = SpeedProfile::constant(25.0);
    const double gain = 1.0;
    VehicleState s;
    s.v = 20.0;  // inside the linear (unclamped) region
    ActuatorLimits lim;
    double t = 0.0;
    double prev_v = s.v;
    while (t < 5.0 / gain) {
        const double a = profile_tracking_accel(p, s, t, gain);
        s = step(s, a, std::nullopt, 0.01, lim);
        REQUIRE(s.v >= prev_v);  // monotone rise, no overshoot
        REQUIRE(s.v <= 25.0 + 1e-9);
        prev_v = s.v;
        t += 0.01;
    }
    CHECK(std::abs(25.0 - s.v) < 0.1);
}

TEST_CASE("stopped lead trigger") {
    VehicleState lead;
    lead.y = 0.0;
    ActuatorLimits lim;

    VehicleState ego;
    ego.y = -31.0;
    CHECK_FALSE(stopped_lead_behavior(lead, ego, lim).has_value());
    ego.y = -29.0;
    const auto brake = stopped_lead_behavior(lead, ego, lim);
    REQUIRE(brake.has_value());
    CHECK(*brake == lim.a_min);
    // ahead of the lead: no trigger
    ego.y = 10.0;
    CHECK_FALSE(stopped_lead_behavior(lead, ego, lim).has_value());
}

TEST_CASE("lane change trigger") {
    VehicleState truck;
    truck.x = 1.75;
    truck.y = 0.0;
    VehicleState ego;
    ego.x = -1.75;

    ego.y = -16.0;
    CHECK_FALSE(lane_change_behavior(truck, ego, -1.75).has_value());
    ego.y = -14.0;
    const auto target = lane_change_behavior(truck, ego, -1.75);
    REQUIRE(target.has_value());
    CHECK(*target == -1.75);
    // alongside, not behind
    ego.y = 0.0;
    CHECK_FALSE(lane_change_behavior(truck, ego, -1.75).has_value());
    // same lane: the trigger does not apply
    ego.x = 1.75;
    ego.y = -14.0;
    CHECK_FALSE(lane_change_behavior(truck, ego, -1.75).has_value());
}

TEST_CASE("fixtures") {
    const auto sweep = scenario_fixture("delay_sweep");
    CHECK(sweep.vehicles.size() == 2);
    CHECK(sweep.network.topology == TopologyKind::Precedent);
    CHECK(sweep.vehicles[0].behavior.profile.breakpoints ==
          leader_profile_paper().breakpoints);

    const auto platoon = scenario_fixture("platoon4");
    CHECK(platoon.vehicles.size() == 4);
    for (int i = 1; i < 4; ++i)
        CHECK(platoon.vehicles[i].behavior.kind == BehaviorKind::Cacc);

    CHECK(scenario_fixture("stopped_lead").controller.kind ==
          ControllerKind::Das);
    CHECK(scenario_fixture("lane_change").network.topology ==
          TopologyKind::Ego);
    CHECK_THROWS(scenario_fixture("nope"));
}

TEST_CASE("every fixture round-trips through the file format") {
    for (const auto& name : fixture_names()) {
        const Scenario a = scenario_fixture(name);
        const Scenario b = parse_scenario(serialize_scenario(a));
        CHECK(serialize_scenario(b) == serialize_scenario(a));
        REQUIRE(b.vehicles.size() == a.vehicles.size());
        CHECK(b.name == a.name);
        CHECK(b.duration == a.duration);
        CHECK(b.dt == a.dt);
        CHECK(b.network.delay == a.network.delay);
        for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
            CHECK(b.vehicles[i].init.id == a.vehicles[i].init.id);
            CHECK(b.vehicles[i].init.y == a.vehicles[i].init.y);
            CHECK(b.vehicles[i].behavior.kind == a.vehicles[i].behavior.kind);
            CHECK(b.vehicles[i].behavior.profile.breakpoints ==
                  a.vehicles[i].behavior.profile.breakpoints);
        }
    }
}

TEST_CASE("strict parsing") {
    const std::string base =
        "[scenario]\nname = t\nduration = 1\n\n"
        "[network]\ntopology = precedent\n\n"
        "[controller]\ntype = cacc\n\n"
        "[vehicle.0]\nbehavior = profile\nprofile = 0:5\n\n"
        "[vehicle.1]\nbehavior = cacc\n\n";

    CHECK_NOTHROW(parse_scenario(base));
    CHECK_THROWS_AS(parse_scenario(base + "[vehicle.2]\nbehavior = "
                                          "cacc\nbogus_key = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS(parse_scenario(base + "[weird]\nx = 1\n"));
    CHECK_THROWS(parse_scenario("[scenario]\nname = t\nduration = 1\n"));

    // duplicate vehicle id
    const std::string dup =
        "[scenario]\nname = t\nduration = 1\n\n"
        "[network]\ntopology = precedent\n\n"
        "[controller]\ntype = cacc\n\n"
        "[vehicle.0]\nbehavior = profile\nprofile = 0:5\n\n"
        "[vehicle.0]\nbehavior = cacc\n\n";
    CHECK_THROWS_AS(parse_scenario(dup), std::invalid_argument);

    CHECK_THROWS(load_scenario("/nonexistent/path.scenario"));
}
