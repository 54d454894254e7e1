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

// Rank-based statistics. Ties get average ranks everywhere; no continuity
// correction is applied.

#ifndef ALIGN_STATS_H_
#define ALIGN_STATS_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace align::stats {

struct TestResult {
  double statistic = 0;           // rho, U, delta or H
  std::optional<double> p_value;  // two-sided; absent for delta
  std::vector<std::size_t> n;     // sample sizes
};

// 1-based ranks, ties receive the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman's rho with a two-sided p from the t approximation on n - 2
// degrees of freedom (p = 0 when |rho| = 1). Throws std::invalid_argument
// for mismatched or short (< 3) inputs and for a constant vector.
TestResult Spearman(std::span<const double> x, std::span<const double> y);

// Exact two-sided permutation p-value of Spearman's rho, enumerating all
// n! orderings of y. Limited to n <= 10.
double SpearmanPermutationP(std::span<const double> x, std::span<const double> y);

// U of the first sample, U_x = R_x - m(m+1)/2, with a two-sided p from the
// tie-corrected normal approximation. Throws std::invalid_argument on an
// empty sample.
TestResult MannWhitneyU(std::span<const double> x, std::span<const double> y);

// (#{x_i > y_j} - #{x_i < y_j}) / (m n). Throws on an empty sample.
double CliffsDelta(std::span<const double> x, std::span<const double> y);

// Tie-corrected H with a chi-square (k - 1) p-value. All-identical data
// gives H = 0, p = 1. Throws for fewer than two groups, an empty group or
// fewer than three observations.
TestResult KruskalWallis(const std::vector<std::vector<double>> &groups);

enum class DeltaMagnitude { kNegligible, kSmall, kMedium, kLarge };
enum class RhoStrength { kVeryWeak, kWeak, kModerate, kStrong, kVeryStrong };

DeltaMagnitude InterpretDelta(double delta);
RhoStrength InterpretRho(double rho);
std::string_view DeltaMagnitudeName(DeltaMagnitude m);
std::string_view RhoStrengthName(RhoStrength s);

double Median(std::vector<double> values);  // throws when empty
double Mean(std::span<const double> values);
double SampleStdDev(std::span<const double> values);

}  // namespace align::stats

#endif  // ALIGN_STATS_H_
