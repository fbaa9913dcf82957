#pragma once

#include <map>
#include <string>
#include <vector>

#include "v2vsim/sim.hpp"

namespace v2vsim {

// Writes the per-tick log to path, warning events to <path>.events.csv and,
// when with_trace is set, message deliveries to <path>.trace.csv.
void export_csv(const SimLog& log, const std::string& path,
                bool with_trace = false);

// Column-name keyed table, as read back from an exported log.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;
    // Numeric values of one column; empty cells are skipped.
    std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace v2vsim
