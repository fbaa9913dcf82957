#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "v2vsim/csv.hpp"
#include "v2vsim/harness.hpp"
#include "v2vsim/sim.hpp"
#include "v2vsim/stats.hpp"

namespace {

// --scenario accepts a file path or the name of a built-in fixture.
v2vsim::Scenario resolve_scenario(const std::string& spec) {
    if (std::filesystem::exists(spec)) return v2vsim::load_scenario(spec);
    for (const auto& name : v2vsim::fixture_names()) {
        if (name == spec) return v2vsim::scenario_fixture(name);
    }
    throw std::runtime_error(fmt::format(
        "'{}' is neither a scenario file nor a built-in fixture", spec));
}

void apply_cacc_flags(v2vsim::Scenario& s, const CLI::App& cmd) {
    auto set = [&](const char* flag, double& target) {
        if (cmd.count(flag)) target = cmd.get_option(flag)->as<double>();
    };
    set("--kp", s.controller.cacc.k_p);
    set("--kd", s.controller.cacc.k_d);
    set("--headway", s.controller.cacc.headway_h);
    set("--standstill", s.controller.cacc.standstill_d);
}

void add_cacc_flags(CLI::App* cmd) {
    cmd->add_option("--kp", "proportional gain (1/s^2)");
    cmd->add_option("--kd", "derivative gain (1/s)");
    cmd->add_option("--headway", "headway time h (s)");
    cmd->add_option("--standstill", "standstill distance d (m)");
}

void print_summary(const v2vsim::SummaryStats& st) {
    fmt::print("n={} mean={} median={} std={} var={} min={} max={}\n", st.n,
               st.mean, st.median, st.std_dev, st.variance, st.min, st.max);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic V2V platoon / collision-warning simulator"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one scenario, write CSV");
    std::string run_scenario, run_out;
    std::uint64_t run_seed = 0;
    bool run_trace = false;
    run_cmd->add_option("--scenario", run_scenario, "scenario file or fixture")
        ->required();
    run_cmd->add_option("--out", run_out, "output CSV path")->required();
    run_cmd->add_option("--seed", run_seed, "run seed");
    run_cmd->add_flag("--trace", run_trace, "also write the delivery trace");
    add_cacc_flags(run_cmd);

    // sweep-delay
    auto* sweep_cmd =
        app.add_subcommand("sweep-delay", "run one scenario per delay value");
    std::string sweep_scenario, sweep_out;
    std::vector<double> sweep_delays;
    bool sweep_sequential = false;
    sweep_cmd->add_option("--scenario", sweep_scenario,
                          "scenario file or fixture")
        ->required();
    sweep_cmd->add_option("--delays", sweep_delays, "delays in seconds")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
    sweep_cmd->add_flag("--sequential", sweep_sequential,
                        "run the sweep sequentially");
    add_cacc_flags(sweep_cmd);

    // platoon
    auto* platoon_cmd =
        app.add_subcommand("platoon", "run the 4-vehicle platoon fixture");
    double platoon_delay = 0.01;
    std::string platoon_out = "platoon.csv";
    platoon_cmd->add_option("--delay", platoon_delay, "link delay (s)")
        ->required();
    platoon_cmd->add_option("--out", platoon_out, "output CSV path");
    add_cacc_flags(platoon_cmd);

    // das
    auto* das_cmd =
        app.add_subcommand("das", "run a collision-warning scenario");
    std::string das_scenario, das_out = "das.csv";
    das_cmd->add_option("--scenario", das_scenario, "scenario file or fixture")
        ->required();
    das_cmd->add_option("--out", das_out, "output CSV path");

    // stats
    auto* stats_cmd =
        app.add_subcommand("stats", "summary statistics of a CSV column");
    std::string stats_in, stats_column;
    bool stats_bootstrap = false;
    double stats_level = 0.95;
    std::size_t stats_resamples = 10000;
    std::uint64_t stats_seed = 0;
    stats_cmd->add_option("--in", stats_in, "input CSV")->required();
    stats_cmd->add_option("--column", stats_column, "column name")->required();
    stats_cmd->add_flag("--bootstrap", stats_bootstrap,
                        "also print a bootstrap CI of the mean");
    stats_cmd->add_option("--level", stats_level, "CI level");
    stats_cmd->add_option("--resamples", stats_resamples, "bootstrap resamples");
    stats_cmd->add_option("--seed", stats_seed, "bootstrap seed");

    // histogram
    auto* hist_cmd = app.add_subcommand("histogram",
                                        "equal-width histogram of a column");
    std::string hist_in, hist_column;
    std::size_t hist_bins = 10;
    hist_cmd->add_option("--in", hist_in, "input CSV")->required();
    hist_cmd->add_option("--column", hist_column, "column name")->required();
    hist_cmd->add_option("--bins", hist_bins, "bin count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            auto s = resolve_scenario(run_scenario);
            s.rng_seed = run_seed;
            apply_cacc_flags(s, *run_cmd);
            const auto log = v2vsim::run(s);
            v2vsim::export_csv(log, run_out, run_trace);
            fmt::print("wrote {} rows, {} warnings -> {}\n", log.rows.size(),
                       log.warnings.size(), run_out);
        } else if (*sweep_cmd) {
            auto s = resolve_scenario(sweep_scenario);
            apply_cacc_flags(s, *sweep_cmd);
            const auto rows =
                v2vsim::sweep_delay(s, sweep_delays, !sweep_sequential);
            std::FILE* f = std::fopen(sweep_out.c_str(), "w");
            if (!f)
                throw std::runtime_error(
                    fmt::format("cannot open '{}' for writing", sweep_out));
            fmt::print(f, "delay,mean,median,std,variance,min,max,"
                          "max_variation\n");
            for (const auto& r : rows) {
                fmt::print(f, "{},{},{},{},{},{},{},{}\n", r.delay,
                           r.stats.mean, r.stats.median, r.stats.std_dev,
                           r.stats.variance, r.stats.min, r.stats.max,
                           r.max_variation);
            }
            std::fclose(f);
            fmt::print("wrote {} delay rows -> {}\n", rows.size(), sweep_out);
        } else if (*platoon_cmd) {
            auto s = v2vsim::scenario_fixture("platoon4");
            s.network.delay = platoon_delay;
            apply_cacc_flags(s, *platoon_cmd);
            const auto log = v2vsim::run(s);
            v2vsim::export_csv(log, platoon_out);
            fmt::print("wrote {} rows -> {}\n", log.rows.size(), platoon_out);
        } else if (*das_cmd) {
            const auto s = resolve_scenario(das_scenario);
            const auto log = v2vsim::run(s);
            v2vsim::export_csv(log, das_out);
            fmt::print("{} warning events -> {}.events.csv\n",
                       log.warnings.size(), das_out);
            for (const auto& w : log.warnings) {
                static bool first = true;
                if (first) {
                    fmt::print("first warning: t={} follower={} leader={} "
                               "d_a={} d_sf={}\n",
                               w.time, w.follower_id, w.leader_id, w.d_a,
                               w.d_sf);
                    first = false;
                }
            }
        } else if (*stats_cmd) {
            const auto table = v2vsim::read_csv(stats_in);
            const auto samples = table.numeric_column(stats_column);
            print_summary(v2vsim::summarize(samples));
            if (stats_bootstrap) {
                const auto ci = v2vsim::bootstrap_ci(
                    samples, stats_level, stats_resamples, stats_seed);
                fmt::print("bootstrap {}% CI of the mean: [{}, {}] "
                           "(resamples={}, seed={})\n",
                           ci.level * 100.0, ci.lo, ci.hi, ci.resamples,
                           ci.seed);
            }
        } else if (*hist_cmd) {
            const auto table = v2vsim::read_csv(hist_in);
            const auto samples = table.numeric_column(hist_column);
            for (const auto& b : v2vsim::histogram(samples, hist_bins)) {
                fmt::print("{},{},{}\n", b.lo, b.hi, b.count);
            }
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
