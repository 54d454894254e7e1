// Copyright 2026 The Align Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "align/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace align::stats {

namespace {

// Sum of t^3 - t over tie groups.
double TieSum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

double Pearson(const std::vector<double> &a, const std::vector<double> &b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

void CheckPaired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 3) throw std::invalid_argument("spearman: need at least 3 pairs");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw std::invalid_argument("spearman: constant input");
  }
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

TestResult Spearman(std::span<const double> x, std::span<const double> y) {
  CheckPaired(x, y);
  const double rho = std::clamp(Pearson(AverageRanks(x), AverageRanks(y)), -1.0, 1.0);
  const double df = static_cast<double>(x.size()) - 2.0;
  double p = 0.0;
  const double denom = 1.0 - rho * rho;
  if (denom > 1e-15) {
    const double t = rho * std::sqrt(df / denom);
    boost::math::students_t dist(df);
    p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
  }
  return {rho, p, {x.size(), y.size()}};
}

double SpearmanPermutationP(std::span<const double> x, std::span<const double> y) {
  CheckPaired(x, y);
  if (x.size() > 10) throw std::invalid_argument("spearman: permutation limited to n <= 10");
  const std::vector<double> rx = AverageRanks(x);
  std::vector<double> ry = AverageRanks(y);
  const double observed = std::fabs(Pearson(rx, ry));
  std::sort(ry.begin(), ry.end());
  std::size_t extreme = 0;
  std::size_t total = 0;
  do {
    ++total;
    if (std::fabs(Pearson(rx, ry)) >= observed - 1e-12) ++extreme;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // next_permutation skips duplicate orderings of tied ranks; each distinct
  // arrangement stands for the same number of raw permutations.
  return static_cast<double>(extreme) / static_cast<double>(total);
}

TestResult MannWhitneyU(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("mann-whitney: empty sample");
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::vector<double> ranks = AverageRanks(pooled);
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double big_n = m + n;
  const double rank_sum_x = std::accumulate(ranks.begin(), ranks.begin() + x.size(), 0.0);
  const double u = rank_sum_x - m * (m + 1.0) / 2.0;

  const double variance =
      m * n / 12.0 * ((big_n + 1.0) - TieSum(pooled) / (big_n * (big_n - 1.0)));
  double p = 1.0;
  if (variance > 0) {
    const double z = (u - m * n / 2.0) / std::sqrt(variance);
    p = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  }
  return {u, p, {x.size(), y.size()}};
}

double CliffsDelta(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("cliff's delta: empty sample");
  std::vector<double> sorted_y(y.begin(), y.end());
  std::sort(sorted_y.begin(), sorted_y.end());
  long long dominance = 0;
  for (double xi : x) {
    const auto below = std::lower_bound(sorted_y.begin(), sorted_y.end(), xi) - sorted_y.begin();
    const auto above = sorted_y.end() - std::upper_bound(sorted_y.begin(), sorted_y.end(), xi);
    dominance += below - above;
  }
  return static_cast<double>(dominance) /
         (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

TestResult KruskalWallis(const std::vector<std::vector<double>> &groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal-wallis: need two groups");
  std::vector<double> pooled;
  std::vector<std::size_t> sizes;
  for (const auto &g : groups) {
    if (g.empty()) throw std::invalid_argument("kruskal-wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
    sizes.push_back(g.size());
  }
  const double big_n = static_cast<double>(pooled.size());
  if (pooled.size() < 3) throw std::invalid_argument("kruskal-wallis: need 3 observations");

  const double tie_factor = 1.0 - TieSum(pooled) / (big_n * big_n * big_n - big_n);
  if (tie_factor <= 0) return {0.0, 1.0, sizes};

  const std::vector<double> ranks = AverageRanks(pooled);
  double sum = 0;
  std::size_t offset = 0;
  for (std::size_t size : sizes) {
    const double r = std::accumulate(ranks.begin() + offset, ranks.begin() + offset + size, 0.0);
    sum += r * r / static_cast<double>(size);
    offset += size;
  }
  double h = 12.0 / (big_n * (big_n + 1.0)) * sum - 3.0 * (big_n + 1.0);
  h = std::max(0.0, h / tie_factor);
  boost::math::chi_squared dist(static_cast<double>(groups.size() - 1));
  const double p = std::clamp(boost::math::cdf(boost::math::complement(dist, h)), 0.0, 1.0);
  return {h, p, sizes};
}

DeltaMagnitude InterpretDelta(double delta) {
  const double a = std::fabs(delta);
  if (a < 0.147) return DeltaMagnitude::kNegligible;
  if (a < 0.33) return DeltaMagnitude::kSmall;
  if (a < 0.474) return DeltaMagnitude::kMedium;
  return DeltaMagnitude::kLarge;
}

RhoStrength InterpretRho(double rho) {
  const double a = std::fabs(rho);
  if (a < 0.20) return RhoStrength::kVeryWeak;
  if (a < 0.40) return RhoStrength::kWeak;
  if (a < 0.60) return RhoStrength::kModerate;
  if (a < 0.80) return RhoStrength::kStrong;
  return RhoStrength::kVeryStrong;
}

std::string_view DeltaMagnitudeName(DeltaMagnitude m) {
  switch (m) {
    case DeltaMagnitude::kNegligible: return "negligible";
    case DeltaMagnitude::kSmall: return "small";
    case DeltaMagnitude::kMedium: return "medium";
    case DeltaMagnitude::kLarge: return "large";
  }
  return "?";
}

std::string_view RhoStrengthName(RhoStrength s) {
  switch (s) {
    case RhoStrength::kVeryWeak: return "very weak";
    case RhoStrength::kWeak: return "weak";
    case RhoStrength::kModerate: return "moderate";
    case RhoStrength::kStrong: return "strong";
    case RhoStrength::kVeryStrong: return "very strong";
  }
  return "?";
}

double Median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double SampleStdDev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = Mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace align::stats
