#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "debias/rng.hpp"

namespace debias {

// Geometric ladder of batch sizes n_t = a * ratio^(t-1), ending at n_L = N.
struct BatchSchedule {
  std::int64_t a = 1;
  std::int64_t ratio = 2;
  int levels = 1;
  std::vector<std::int64_t> sizes;       // n_1 .. n_L
  std::vector<std::int64_t> cumulative;  // n_1 + ... + n_t

  std::int64_t total() const { return sizes.back(); }
};

// Distribution of the random truncation level T on {1, .., L} with
// P(T = t) proportional to 2^(-alpha t).
struct TruncationDistribution {
  double alpha = 1.0;
  int levels = 1;
  std::vector<double> probs;  // p_1 .. p_L
  std::vector<double> tails;  // P(T >= t), t = 1 .. L
  double normalizer = 1.0;    // Z_alpha = sum_t 2^(-alpha t)
  bool alpha_above_one = false;
};

// Power-law fit d(n) = c * n^(-beta) of squared expectation differences.
struct ConvergenceFit {
  double c = 1.0;
  double beta = 1.0;
  double residual = 0.0;  // sum of squared log-space residuals
  bool degenerate = false;
};

// Cost of one inner estimate: M likelihood sweeps over the batch.
struct CostModel {
  std::int64_t chain_length = 1;     // M, including burn-in
  double per_point_cost = 1.0;       // likelihood evaluations per datum per sweep
};

struct SecondMomentBound {
  double value = 0.0;
  bool diverging = false;  // alpha >= beta: bound grows without limit as L grows
};

struct TuneResult {
  double alpha = 0.0;
  double work_variance = 0.0;
};

BatchSchedule build_geometric_schedule(std::int64_t a, std::int64_t ratio, std::int64_t n_total);

// Largest N' <= n_total reachable as a * ratio^k. Used when a dataset size is
// not exactly on the ladder.
std::int64_t largest_admissible_total(std::int64_t a, std::int64_t ratio, std::int64_t n_total);

TruncationDistribution build_truncation_geometric(double alpha, int levels);

// Inverse-CDF draw of T in {1, .., L}.
int sample_truncation(const TruncationDistribution& dist, Rng& rng);

// Exact finite sum M * sum_t p_t * (n_1 + ... + n_t).
double expected_likelihood_evals(const BatchSchedule& schedule, const TruncationDistribution& dist,
                                 const CostModel& cost);

// Upper bound on E[(phi*)^2] under the fit d_t <= c / n_t^beta:
//   (c 2^beta / a^beta) (1 - 2^(-alpha L)) sum_t 1 / (2^((beta-alpha)(t-1)) - 2^(beta(t-1)-alpha L)).
// Finite for any finite L; `diverging` is set when alpha >= beta.
SecondMomentBound second_moment_bound(const ConvergenceFit& fit, double alpha, std::int64_t a,
                                      int levels);

// Work-variance product cost(alpha) * bound(alpha) for a ladder derived from
// (a, ratio, n_total), padded down to the largest admissible total.
double work_variance_product(double alpha, std::int64_t a, std::int64_t ratio,
                             std::int64_t n_total, const ConvergenceFit& fit,
                             const CostModel& cost);

// Golden-section minimiser of the work-variance product over
// alpha in (0.01, beta - 0.01), tolerance 1e-4.
TuneResult tune_alpha(std::int64_t a, std::int64_t ratio, std::int64_t n_total,
                      const ConvergenceFit& fit, const CostModel& cost);

// Least squares in log-log space: log d = log c - beta log n.
ConvergenceFit fit_beta(const std::vector<double>& sizes, const std::vector<double>& squared_diffs);

// The closed-form asymptotic tradeoff expression reported alongside the
// derivation of the bound, kept for side-by-side comparison with the finite
// sums (see cmd_tune --paper-expression). Not used by tune_alpha.
double asymptotic_tradeoff_expression(double alpha, std::int64_t a, std::int64_t n_total,
                                      double beta);

}  // namespace debias
