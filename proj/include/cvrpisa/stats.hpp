#pragma once

#include <span>
#include <vector>

namespace cvrpisa {

// Eight-number description of a sample. Empty samples summarize to all zeros;
// constant samples have sd = var = skew = kurtosis = 0.
struct StatSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  double var = 0.0;
  double skew = 0.0;
  double kurtosis = 0.0;

  // Summary of c * x for c > 0: location/scale stats scale, shape stats do not.
  StatSummary scaled(double c) const;
};

// sd uses the n-1 denominator; skew = m3 / sd^3, kurtosis = m4 / sd^4 - 3,
// with m3, m4 the biased central moments.
StatSummary summarize(std::span<const double> sample);

// Linear-interpolation quantile (Hyndman-Fan type 7), p in [0, 1].
double quantile(std::span<const double> sample, double p);

double mean(std::span<const double> sample);

// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace cvrpisa
