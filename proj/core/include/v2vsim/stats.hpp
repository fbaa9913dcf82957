#pragma once

#include <cstdint>
#include <vector>

namespace v2vsim {

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;  // sample, n-1
    double variance = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

SummaryStats summarize(const std::vector<double>& samples);

struct BootstrapCI {
    double level = 0.95;
    std::size_t resamples = 10000;
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t seed = 0;
};

// Percentile bootstrap of the mean; deterministic per (sample, seed).
BootstrapCI bootstrap_ci(const std::vector<double>& samples,
                         double level = 0.95, std::size_t resamples = 10000,
                         std::uint64_t seed = 0);

struct HistogramBin {
    double lo;
    double hi;
    std::size_t count;
};

// Equal-width bins over [min, max]; the last bin's right edge is inclusive.
std::vector<HistogramBin> histogram(const std::vector<double>& samples,
                                    std::size_t bins);

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b);

double max_abs(const std::vector<double>& samples);

}  // namespace v2vsim
