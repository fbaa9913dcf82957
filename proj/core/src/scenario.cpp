#include "v2vsim/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace v2vsim {

double SpeedProfile::eval(double t) const {
    if (breakpoints.empty())
        throw std::invalid_argument("SpeedProfile: no breakpoints");
    if (t <= breakpoints.front().first) return breakpoints.front().second;
    if (t >= breakpoints.back().first) return breakpoints.back().second;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const auto& [t0, v0] = breakpoints[i - 1];
        const auto& [t1, v1] = breakpoints[i];
        if (t <= t1) {
            const double w = (t - t0) / (t1 - t0);
            return v0 + w * (v1 - v0);
        }
    }
    return breakpoints.back().second;
}

void SpeedProfile::validate() const {
    if (breakpoints.empty())
        throw std::invalid_argument("SpeedProfile: no breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i].second < 0.0)
            throw std::invalid_argument("SpeedProfile: negative speed");
        if (i > 0 && breakpoints[i].first <= breakpoints[i - 1].first)
            throw std::invalid_argument(
                "SpeedProfile: breakpoint times must increase");
    }
}

SpeedProfile SpeedProfile::constant(double v) {
    return SpeedProfile{{{0.0, v}}};
}

SpeedProfile leader_profile_paper() {
    return SpeedProfile{{{0.0, 0.0},
                         {10.0, 37.0},
                         {15.0, 8.0},
                         {25.0, 37.0},
                         {33.0, 3.0}}};
}

double profile_tracking_accel(const SpeedProfile& profile,
                              const VehicleState& state, double t,
                              double gain) {
    if (!(gain > 0.0))
        throw std::invalid_argument("profile_tracking_accel: gain must be > 0");
    return gain * (profile.eval(t) - state.v);
}

double scripted_ego_driver(const SpeedProfile& profile,
                           const VehicleState& state, double t, double gain) {
    return profile_tracking_accel(profile, state, t, gain);
}

std::optional<double> stopped_lead_behavior(const VehicleState& lead,
                                            const VehicleState& ego,
                                            const ActuatorLimits& limits) {
    const PairGeometry g = project(lead, ego);
    if (g.u < 0.0 && g.d_a <= 30.0) return limits.a_min;
    return std::nullopt;
}

std::optional<double> lane_change_behavior(const VehicleState& truck,
                                           const VehicleState& ego,
                                           double ego_lane_offset) {
    const PairGeometry g = project(truck, ego);
    const bool behind = g.u < 0.0 && g.d_a <= 15.0;
    const bool different_lane = g.d_p > 0.5 * kLaneWidth;
    if (behind && different_lane) return ego_lane_offset;
    return std::nullopt;
}

void Scenario::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("scenario: duration <= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt <= 0");
    std::set<int> ids;
    for (const auto& sv : vehicles) {
        if (!ids.insert(sv.init.id).second)
            throw std::invalid_argument(
                fmt::format("scenario: duplicate vehicle id {}", sv.init.id));
        if (!(sv.init.width > 0.0 && sv.init.length > 0.0))
            throw std::invalid_argument("scenario: non-positive dimensions");
        if (sv.init.v < 0.0)
            throw std::invalid_argument("scenario: negative initial speed");
        sv.behavior.profile.validate();
    }
    if (controller.kind == ControllerKind::Das) {
        if (!ids.count(controller.ego_id))
            throw std::invalid_argument("scenario: das ego id not declared");
        controller.das.validate();
    } else {
        controller.cacc.validate();
    }
    if (network.delay < 0.0)
        throw std::invalid_argument("scenario: negative delay");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Section {
    std::string name;
    std::map<std::string, std::string> kv;
    std::vector<std::string> key_order;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(
            fmt::format("scenario: bad number for '{}': '{}'", key, s));
    }
}

SpeedProfile parse_profile(const std::string& s) {
    SpeedProfile p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument(
                fmt::format("scenario: bad profile entry '{}'", item));
        p.breakpoints.emplace_back(to_double("profile", trim(item.substr(0, colon))),
                                   to_double("profile", trim(item.substr(colon + 1))));
    }
    p.validate();
    return p;
}

std::string format_profile(const SpeedProfile& p) {
    std::string out;
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        if (i) out += ", ";
        out += fmt::format("{}:{}", p.breakpoints[i].first,
                           p.breakpoints[i].second);
    }
    return out;
}

class KeyReader {
public:
    explicit KeyReader(const Section& s) : s_(s) {}
    ~KeyReader() = default;

    bool has(const std::string& key) {
        used_.insert(key);
        return s_.kv.count(key) > 0;
    }
    std::string str(const std::string& key) {
        used_.insert(key);
        auto it = s_.kv.find(key);
        if (it == s_.kv.end())
            throw std::invalid_argument(fmt::format(
                "scenario: missing key '{}' in [{}]", key, s_.name));
        return it->second;
    }
    double num(const std::string& key) { return to_double(key, str(key)); }
    double num_or(const std::string& key, double fallback) {
        return has(key) ? num(key) : fallback;
    }
    std::string str_or(const std::string& key, const std::string& fallback) {
        return has(key) ? str(key) : fallback;
    }
    void finish() const {
        for (const auto& k : s_.key_order) {
            if (!used_.count(k))
                throw std::invalid_argument(fmt::format(
                    "scenario: unknown key '{}' in [{}]", k, s_.name));
        }
    }

private:
    const Section& s_;
    std::set<std::string> used_;
};

}  // namespace

Scenario parse_scenario(const std::string& text) {
    std::vector<Section> sections;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(fmt::format(
                    "scenario: line {}: malformed section header", lineno));
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || sections.empty())
            throw std::invalid_argument(fmt::format(
                "scenario: line {}: expected 'key = value'", lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto& sec = sections.back();
        if (!sec.kv.emplace(key, val).second)
            throw std::invalid_argument(fmt::format(
                "scenario: line {}: duplicate key '{}' in [{}]", lineno, key,
                sec.name));
        sec.key_order.push_back(key);
    }

    Scenario sc;
    bool saw_scenario = false, saw_network = false, saw_controller = false;
    for (const auto& sec : sections) {
        KeyReader r(sec);
        if (sec.name == "scenario") {
            saw_scenario = true;
            sc.name = r.str("name");
            sc.duration = r.num("duration");
            sc.dt = r.num_or("dt", 0.01);
            sc.rng_seed = static_cast<std::uint64_t>(r.num_or("seed", 0));
            sc.limits.a_max = r.num_or("a_max", sc.limits.a_max);
            sc.limits.a_min = r.num_or("a_min", sc.limits.a_min);
            sc.limits.lane_blend_duration =
                r.num_or("lane_blend_duration", sc.limits.lane_blend_duration);
        } else if (sec.name == "network") {
            saw_network = true;
            const std::string topo = r.str("topology");
            if (topo == "precedent")
                sc.network.topology = TopologyKind::Precedent;
            else if (topo == "ego")
                sc.network.topology = TopologyKind::Ego;
            else
                throw std::invalid_argument(
                    fmt::format("scenario: unknown topology '{}'", topo));
            sc.network.delay = r.num_or("delay", 0.01);
            sc.network.range = r.num_or("range", 300.0);
        } else if (sec.name == "controller") {
            saw_controller = true;
            const std::string type = r.str("type");
            if (type == "cacc") {
                sc.controller.kind = ControllerKind::Cacc;
                auto& p = sc.controller.cacc;
                p.k_p = r.num_or("kp", p.k_p);
                p.k_d = r.num_or("kd", p.k_d);
                p.headway_h = r.num_or("headway", p.headway_h);
                p.standstill_d = r.num_or("standstill", p.standstill_d);
            } else if (type == "das") {
                sc.controller.kind = ControllerKind::Das;
                auto& p = sc.controller.das;
                sc.controller.ego_id = static_cast<int>(r.num("ego"));
                p.beta = r.num_or("beta", p.beta);
                p.d_mls = r.num_or("d_mls", p.d_mls);
                p.d_min = r.num_or("d_min", p.d_min);
                p.t_r = r.num_or("t_r", p.t_r);
                p.a_f = r.num_or("a_f", p.a_f);
                p.a_l = r.num_or("a_l", p.a_l);
            } else {
                throw std::invalid_argument(
                    fmt::format("scenario: unknown controller type '{}'", type));
            }
        } else if (sec.name.rfind("vehicle.", 0) == 0) {
            ScenarioVehicle sv;
            try {
                sv.init.id = std::stoi(sec.name.substr(8));
            } catch (...) {
                throw std::invalid_argument(fmt::format(
                    "scenario: bad vehicle section name '{}'", sec.name));
            }
            sv.init.x = r.num_or("x", 0.0);
            sv.init.y = r.num_or("y", 0.0);
            sv.init.yaw = r.num_or("yaw", 0.0);
            sv.init.v = r.num_or("v", 0.0);
            sv.init.width = r.num_or("width", 1.8);
            sv.init.length = r.num_or("length", 4.5);
            const std::string b = r.str("behavior");
            if (b == "profile")
                sv.behavior.kind = BehaviorKind::Profile;
            else if (b == "cacc")
                sv.behavior.kind = BehaviorKind::Cacc;
            else if (b == "stopped_lead")
                sv.behavior.kind = BehaviorKind::StoppedLead;
            else if (b == "lane_change")
                sv.behavior.kind = BehaviorKind::LaneChange;
            else
                throw std::invalid_argument(
                    fmt::format("scenario: unknown behavior '{}'", b));
            if (sv.behavior.kind == BehaviorKind::Cacc) {
                sv.behavior.profile = SpeedProfile::constant(0.0);
                if (r.has("profile"))
                    throw std::invalid_argument(
                        "scenario: cacc vehicles take no profile");
            } else {
                sv.behavior.profile = parse_profile(r.str("profile"));
            }
            sv.behavior.gain = r.num_or("gain", 1.0);
            sc.vehicles.push_back(std::move(sv));
        } else {
            throw std::invalid_argument(
                fmt::format("scenario: unknown section [{}]", sec.name));
        }
        r.finish();
    }
    if (!saw_scenario || !saw_network || !saw_controller)
        throw std::invalid_argument(
            "scenario: [scenario], [network] and [controller] are required");
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(
            fmt::format("scenario: cannot open '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::string out;
    out += fmt::format(
        "[scenario]\nname = {}\nduration = {}\ndt = {}\nseed = {}\n"
        "a_max = {}\na_min = {}\nlane_blend_duration = {}\n\n",
        s.name, s.duration, s.dt, s.rng_seed, s.limits.a_max, s.limits.a_min,
        s.limits.lane_blend_duration);
    out += fmt::format(
        "[network]\ntopology = {}\ndelay = {}\nrange = {}\n\n",
        s.network.topology == TopologyKind::Precedent ? "precedent" : "ego",
        s.network.delay, s.network.range);
    if (s.controller.kind == ControllerKind::Cacc) {
        const auto& p = s.controller.cacc;
        out += fmt::format(
            "[controller]\ntype = cacc\nkp = {}\nkd = {}\nheadway = "
            "{}\nstandstill = {}\n\n",
            p.k_p, p.k_d, p.headway_h, p.standstill_d);
    } else {
        const auto& p = s.controller.das;
        out += fmt::format(
            "[controller]\ntype = das\nego = {}\nbeta = {}\nd_mls = "
            "{}\nd_min = {}\nt_r = {}\na_f = {}\na_l = {}\n\n",
            s.controller.ego_id, p.beta, p.d_mls, p.d_min, p.t_r, p.a_f,
            p.a_l);
    }
    for (const auto& sv : s.vehicles) {
        out += fmt::format(
            "[vehicle.{}]\nx = {}\ny = {}\nyaw = {}\nv = {}\nwidth = "
            "{}\nlength = {}\n",
            sv.init.id, sv.init.x, sv.init.y, sv.init.yaw, sv.init.v,
            sv.init.width, sv.init.length);
        const char* b = nullptr;
        switch (sv.behavior.kind) {
            case BehaviorKind::Profile: b = "profile"; break;
            case BehaviorKind::Cacc: b = "cacc"; break;
            case BehaviorKind::StoppedLead: b = "stopped_lead"; break;
            case BehaviorKind::LaneChange: b = "lane_change"; break;
        }
        out += fmt::format("behavior = {}\n", b);
        if (sv.behavior.kind != BehaviorKind::Cacc)
            out += fmt::format("profile = {}\n",
                               format_profile(sv.behavior.profile));
        out += fmt::format("gain = {}\n\n", sv.behavior.gain);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

constexpr double kCruise70Kmh = 70.0 / 3.6;

Scenario make_delay_sweep() {
    Scenario s;
    s.name = "delay_sweep";
    s.duration = 33.0;
    s.network = {TopologyKind::Precedent, 0.01, 300.0};
    s.controller.kind = ControllerKind::Cacc;

    ScenarioVehicle leader;
    leader.init.id = 0;
    leader.behavior = {BehaviorKind::Profile, leader_profile_paper(), 1.0};
    ScenarioVehicle follower;
    follower.init.id = 1;
    follower.init.y = -6.5;  // standstill bumper gap = standstill_d
    follower.behavior.kind = BehaviorKind::Cacc;
    follower.behavior.profile = SpeedProfile::constant(0.0);
    s.vehicles = {leader, follower};
    return s;
}

Scenario make_platoon4() {
    Scenario s = make_delay_sweep();
    s.name = "platoon4";
    s.vehicles.resize(1);
    for (int i = 1; i < 4; ++i) {
        ScenarioVehicle f;
        f.init.id = i;
        f.init.y = -6.5 * i;
        f.behavior.kind = BehaviorKind::Cacc;
        f.behavior.profile = SpeedProfile::constant(0.0);
        s.vehicles.push_back(f);
    }
    return s;
}

Scenario make_stopped_lead() {
    Scenario s;
    s.name = "stopped_lead";
    s.duration = 40.0;
    s.network = {TopologyKind::Ego, 0.01, 300.0};
    s.controller.kind = ControllerKind::Das;
    s.controller.ego_id = 0;

    ScenarioVehicle ego;
    ego.init.id = 0;
    ego.init.v = 100.0 / 3.6;  // closes on the 70 km/h lead
    ego.behavior = {BehaviorKind::Profile, SpeedProfile::constant(100.0 / 3.6),
                    1.0};
    ScenarioVehicle lead;
    lead.init.id = 1;
    lead.init.y = 200.0;
    lead.init.v = kCruise70Kmh;
    lead.behavior = {BehaviorKind::StoppedLead,
                     SpeedProfile::constant(kCruise70Kmh), 1.0};
    s.vehicles = {ego, lead};
    return s;
}

Scenario make_lane_change() {
    Scenario s;
    s.name = "lane_change";
    s.duration = 20.0;
    s.network = {TopologyKind::Ego, 0.01, 300.0};
    s.controller.kind = ControllerKind::Das;
    s.controller.ego_id = 0;

    ScenarioVehicle ego;
    ego.init.id = 0;
    ego.init.x = -0.5 * kLaneWidth;
    ego.init.v = 100.0 / 3.6;
    ego.behavior = {BehaviorKind::Profile, SpeedProfile::constant(100.0 / 3.6),
                    1.0};
    ScenarioVehicle truck;
    truck.init.id = 1;
    truck.init.x = 0.5 * kLaneWidth;
    truck.init.y = 60.0;
    truck.init.v = kCruise70Kmh;
    truck.init.width = 2.5;
    truck.init.length = 8.0;
    truck.behavior = {BehaviorKind::LaneChange,
                      SpeedProfile::constant(kCruise70Kmh), 1.0};
    s.vehicles = {ego, truck};
    return s;
}

}  // namespace

Scenario scenario_fixture(const std::string& name) {
    if (name == "delay_sweep") return make_delay_sweep();
    if (name == "platoon4") return make_platoon4();
    if (name == "stopped_lead") return make_stopped_lead();
    if (name == "lane_change") return make_lane_change();
    throw std::invalid_argument(
        fmt::format("unknown scenario fixture '{}'", name));
}

std::vector<std::string> fixture_names() {
    return {"delay_sweep", "platoon4", "stopped_lead", "lane_change"};
}

}  // namespace v2vsim
