#include "v2vsim/csv.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace v2vsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(
            fmt::format("export_csv: cannot open '{}' for writing", path));
    return out;
}

}  // namespace

void export_csv(const SimLog& log, const std::string& path, bool with_trace) {
    auto out = open_out(path);
    out << "t,vehicle_id,x,y,yaw,v,a_command,a_applied,"
           "gap_to_predecessor,spacing_error,warning_flag\n";
    for (const auto& r : log.rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.t,
                           r.vehicle_id, r.x, r.y, r.yaw, r.v, r.a_command,
                           r.a_applied,
                           r.gap_to_predecessor
                               ? fmt::format("{}", *r.gap_to_predecessor)
                               : "",
                           r.spacing_error
                               ? fmt::format("{}", *r.spacing_error)
                               : "",
                           r.warning_flag);
    }
    if (!out)
        throw std::runtime_error(
            fmt::format("export_csv: write failed for '{}'", path));

    auto ev = open_out(path + ".events.csv");
    ev << "time,follower_id,leader_id,d_a,d_sf\n";
    for (const auto& w : log.warnings) {
        ev << fmt::format("{},{},{},{},{}\n", w.time, w.follower_id,
                          w.leader_id, w.d_a, w.d_sf);
    }

    if (with_trace) {
        auto tr = open_out(path + ".trace.csv");
        tr << "deliver_at,src,dst,speed,accel\n";
        for (const auto& d : log.deliveries) {
            tr << fmt::format("{},{},{},{},{}\n", d.deliver_at,
                              d.msg.sender_id, d.dst_id, d.msg.speed,
                              d.msg.accel);
        }
    }
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument(fmt::format("csv: no column '{}'", name));
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
    const std::size_t idx = column_index(name);
    std::vector<double> out;
    for (const auto& row : rows) {
        if (idx >= row.size() || row[idx].empty()) continue;
        out.push_back(std::stod(row[idx]));
    }
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("csv: cannot open '{}'", path));
    CsvTable t;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) fields.push_back(cell);
        if (line.empty()) continue;
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (header) {
            t.columns = fields;
            header = false;
        } else {
            t.rows.push_back(fields);
        }
    }
    return t;
}

}  // namespace v2vsim
