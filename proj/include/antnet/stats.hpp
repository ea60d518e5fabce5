#ifndef ANTNET_STATS_HPP
#define ANTNET_STATS_HPP

#include <span>

namespace antnet {

double mean(std::span<const double> values);
double population_stddev(std::span<const double> values);
double median(std::span<const double> values);  // copies and sorts

/// One-sided sign test: P(X >= wins) with X ~ Binomial(wins + losses, 1/2).
/// Ties are excluded by the caller. Returns 1.0 when there are no
/// informative pairs.
double sign_test_p(int wins, int losses);

}  // namespace antnet

#endif
