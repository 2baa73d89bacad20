#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "debias/schedule.hpp"

namespace debias {

// A model-specific evaluator of partial-posterior expectations. `subset` is a
// prefix of a random permutation of the dataset; evaluate must be a pure
// function of (subset, sub_seed) and safe to call from multiple threads.
class ExpectationProvider {
 public:
  virtual ~ExpectationProvider() = default;
  virtual double evaluate(std::span<const std::uint32_t> subset, std::uint64_t sub_seed) const = 0;
  virtual std::int64_t dataset_size() const = 0;
  virtual std::string functional_name() const = 0;
};

// Vector-valued counterpart, used when a whole set of expectations shares one
// path (e.g. predictive means at many test inputs).
class VectorExpectationProvider {
 public:
  virtual ~VectorExpectationProvider() = default;
  virtual std::vector<double> evaluate_vector(std::span<const std::uint32_t> subset,
                                              std::uint64_t sub_seed) const = 0;
  virtual std::int64_t dataset_size() const = 0;
  virtual std::size_t value_dim() const = 0;
};

struct PartialExpectationPath {
  std::vector<double> values;             // phi_1 .. phi_T
  std::vector<std::int64_t> batch_sizes;  // matching n_t
  std::vector<std::uint64_t> level_seeds;
  std::vector<std::int64_t> level_evals;  // M * n_t per evaluated level
};

struct DebiasReplicate {
  int truncation = 0;  // T_r
  double phi_star = 0.0;
  std::int64_t likelihood_evals = 0;
  std::uint64_t seed = 0;
};

struct DebiasEstimate {
  double mean = 0.0;
  double sample_variance = 0.0;
  double stderr_value = std::numeric_limits<double>::quiet_NaN();
  bool stderr_defined = false;
  std::int64_t replicate_count = 0;
  std::int64_t total_likelihood_evals = 0;
  bool tolerance_reached = true;   // false when the replicate cap stopped the run
  bool budget_truncated = false;   // some levels were withheld by the memory cap
  std::vector<DebiasReplicate> replicates;  // populated when requested
};

struct StopRule {
  std::int64_t fixed_r = 0;       // > 0: run exactly this many replicates
  double tolerance = 0.0;         // > 0: stop once stderr <= tolerance (r >= 10)
  std::int64_t r_max = 1000000;

  static StopRule fixed(std::int64_t r) { return {r, 0.0, r}; }
  static StopRule until_stderr(double eps, std::int64_t cap) { return {0, eps, cap}; }
};

struct DebiasOptions {
  int workers = 1;
  std::int64_t level_size_cap = std::numeric_limits<std::int64_t>::max();
  bool keep_replicates = false;
  // Called once per replicate, in replicate order.
  std::function<void(const DebiasReplicate&)> sink;
};

// Weighted telescoping sum  sum_t (phi_t - phi_{t-1}) / P(T >= t), phi_0 = 0.
double telescoping_estimate(std::span<const double> values, const TruncationDistribution& dist);

// Brute-force expectation of the telescoping estimator over all truncation
// outcomes for a deterministic path; equals the last value for any valid
// distribution. Kept as the reference the estimator is tested against.
double exact_expectation_oracle(std::span<const double> values, const TruncationDistribution& dist);

struct SecondMomentPair {
  double formula = 0.0;      // tail-weighted difference form
  double enumeration = 0.0;  // sum_t p_t (phi*_t)^2
};
SecondMomentPair second_moment_exact(std::span<const double> values,
                                     const TruncationDistribution& dist);

struct ReplicationOutput {
  DebiasReplicate replicate;
  PartialExpectationPath path;
};

ReplicationOutput run_replication(const ExpectationProvider& provider,
                                  const BatchSchedule& schedule,
                                  const TruncationDistribution& dist, const CostModel& cost,
                                  std::uint64_t seed,
                                  std::int64_t level_size_cap =
                                      std::numeric_limits<std::int64_t>::max());

DebiasEstimate run_debias(const ExpectationProvider& provider, const BatchSchedule& schedule,
                          const TruncationDistribution& dist, const CostModel& cost,
                          const StopRule& stop, std::uint64_t master_seed,
                          const DebiasOptions& options = {});

struct VectorDebiasResult {
  std::vector<double> mean;
  std::int64_t replicate_count = 0;
  std::int64_t total_likelihood_evals = 0;
};

VectorDebiasResult run_debias_vector(const VectorExpectationProvider& provider,
                                     const BatchSchedule& schedule,
                                     const TruncationDistribution& dist, const CostModel& cost,
                                     std::int64_t replications, std::uint64_t master_seed,
                                     int workers = 1);

struct TracePoint {
  std::int64_t r = 0;
  double running_mean = 0.0;
  double running_ci95 = std::numeric_limits<double>::quiet_NaN();
  bool ci_defined = false;
  std::int64_t cumulative_evals = 0;
};

std::vector<TracePoint> convergence_trace(std::span<const DebiasReplicate> replicates);

}  // namespace debias
