#include "cvrpisa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvrpisa {

StatSummary StatSummary::scaled(double c) const {
  StatSummary s = *this;
  s.min *= c;
  s.max *= c;
  s.mean *= c;
  s.median *= c;
  s.sd *= c;
  s.var *= c * c;
  return s;
}

double mean(std::span<const double> sample) {
  if (sample.empty()) return 0.0;
  double acc = 0.0;
  for (double v : sample) acc += v;
  return acc / static_cast<double>(sample.size());
}

double quantile(std::span<const double> sample, double p) {
  if (sample.empty()) return 0.0;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

StatSummary summarize(std::span<const double> sample) {
  StatSummary s;
  if (sample.empty()) return s;
  const auto n = static_cast<double>(sample.size());
  const auto [mn, mx] = std::minmax_element(sample.begin(), sample.end());
  s.min = *mn;
  s.max = *mx;
  s.mean = mean(sample);
  s.median = quantile(sample, 0.5);
  if (s.min == s.max || sample.size() < 2) {
    s.mean = s.min;
    s.median = s.min;
    return s;
  }
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : sample) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  s.var = m2 / (n - 1.0);
  s.sd = std::sqrt(s.var);
  const double s3 = s.var * s.sd;
  const double s4 = s.var * s.var;
  s.skew = (m3 / n) / s3;
  s.kurtosis = (m4 / n) / s4 - 3.0;
  return s;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
  if (a.size() < 2) return 0.0;
  const bool identical = std::equal(a.begin(), a.end(), b.begin());
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  if (identical) return 1.0;
  const double r = sab / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace cvrpisa
