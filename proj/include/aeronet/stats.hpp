// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace aeronet::stats {

// Nearest-rank percentile (no interpolation): value at 1-based index
// ceil(p/100 * n) of the ascending sort. Infinity sentinels sort last.
// Throws std::invalid_argument on an empty sample set.
double percentile(std::span<const double> samples, double p);

struct EcdfPoint {
  double value;
  double fraction;
};

// Ordered (value, cumulative fraction) pairs; final fraction is 1.
std::vector<EcdfPoint> ecdf(std::span<const double> samples);

double mean(std::span<const double> samples);
double stddev(std::span<const double> samples);

}  // namespace aeronet::stats
