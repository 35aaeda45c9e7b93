#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convexreg/smoothing/dataset.hpp"
#include "convexreg/smoothing/smoother.hpp"

namespace convexreg::smoothing {

// constant * (log n / n)^(1/(d+2)); n is real so non-integer sizes work.
double tran_bandwidth(double n, std::size_t dim, double constant = 1.0);

// 20 log-spaced values from half the mean nearest-neighbour distance up to
// the domain diameter.
std::vector<double> default_bandwidth_candidates(const Dataset& data, std::size_t count = 20);

struct CandidateScore
{
  double bandwidth = 0.0;
  double score = 0.0;       // mean squared leave-one-out residual (NaN if disqualified)
  std::size_t failures = 0; // leave-one-out fits that were empty or singular
  bool qualified = false;   // at most 20% failures
};

struct CvResult
{
  double bandwidth = 0.0;
  std::vector<CandidateScore> scores; // in candidate order
};

// Leave-one-out CV over the candidates. A leave-one-out evaluation fails when
// its window is empty or the local-polynomial system falls back; failed
// evaluations are left out of the mean. Scores equal up to 1e-12 relative
// (1e-24 absolute) are ties and go to the smaller bandwidth.
CvResult cross_validate_bandwidth(const Dataset& data, const SmootherSettings& settings,
                                  std::span<const double> candidates);
CvResult cross_validate_bandwidth_serial(const Dataset& data, const SmootherSettings& settings,
                                         std::span<const double> candidates);

// Local-polynomial shorthand.
double cross_validate_bandwidth(const Dataset& data, const Kernel& kernel, int degree,
                                std::span<const double> candidates);

// Tie rule shared with tests.
bool cv_scores_tie(double a, double b);

} // namespace convexreg::smoothing
