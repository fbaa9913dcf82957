#include "v2vsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace v2vsim {

SummaryStats summarize(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    SummaryStats s;
    s.n = samples.size();
    double sum = 0.0;
    s.min = samples[0];
    s.max = samples[0];
    for (double x : samples) {
        sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.variance = s.n > 1 ? ss / static_cast<double>(s.n - 1) : 0.0;
    s.std_dev = std::sqrt(s.variance);

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.n / 2;
    s.median = s.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return s;
}

BootstrapCI bootstrap_ci(const std::vector<double>& samples, double level,
                         std::size_t resamples, std::uint64_t seed) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("bootstrap_ci: need n >= 2");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("bootstrap_ci: level must be in (0, 1)");
    if (resamples == 0)
        throw std::invalid_argument("bootstrap_ci: need resamples >= 1");

    // mt19937_64 with a modulo draw keeps results identical across standard
    // library implementations (uniform_int_distribution is not portable).
    std::mt19937_64 rng(seed);
    std::vector<double> means(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += samples[rng() % n];
        }
        means[r] = sum / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());

    auto percentile = [&](double q) {
        const double pos = q * static_cast<double>(resamples - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, resamples - 1);
        const double w = pos - static_cast<double>(lo);
        return means[lo] * (1.0 - w) + means[hi] * w;
    };

    BootstrapCI ci;
    ci.level = level;
    ci.resamples = resamples;
    ci.seed = seed;
    ci.lo = percentile(0.5 * (1.0 - level));
    ci.hi = percentile(0.5 * (1.0 + level));
    return ci;
}

std::vector<HistogramBin> histogram(const std::vector<double>& samples,
                                    std::size_t bins) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample");
    if (bins < 1) throw std::invalid_argument("histogram: need bins >= 1");
    const auto [min_it, max_it] =
        std::minmax_element(samples.begin(), samples.end());
    const double lo = *min_it;
    const double hi = *max_it;
    const double width = (hi - lo) / static_cast<double>(bins);

    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b] = {lo + width * static_cast<double>(b),
                  lo + width * static_cast<double>(b + 1), 0};
    }
    out.back().hi = hi;
    for (double x : samples) {
        std::size_t b =
            width > 0.0
                ? static_cast<std::size_t>((x - lo) / width)
                : 0;
        if (b >= bins) b = bins - 1;  // right edge of the last bin
        ++out[b].count;
    }
    return out;
}

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson_correlation: bad input sizes");
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0)
        throw std::invalid_argument("pearson_correlation: zero variance");
    return sab / std::sqrt(saa * sbb);
}

double max_abs(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("max_abs: empty sample");
    double m = 0.0;
    for (double x : samples) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace v2vsim
