#include "antnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace antnet {

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double population_stddev(std::span<const double> values) {
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double sign_test_p(int wins, int losses) {
    if (wins < 0 || losses < 0) throw std::invalid_argument("sign_test_p: negative count");
    const int n = wins + losses;
    if (n == 0) return 1.0;
    // P(X >= wins), X ~ Binomial(n, 1/2), summed exactly in doubles.
    double p = 0.0;
    double coeff = 1.0;  // C(n, k), built incrementally from k = 0
    const double scale = std::ldexp(1.0, -n);
    for (int k = 0; k <= n; ++k) {
        if (k >= wins) p += coeff * scale;
        coeff = coeff * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return std::min(p, 1.0);
}

}  // namespace antnet
