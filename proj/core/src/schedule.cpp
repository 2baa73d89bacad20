#include "debias/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "debias/errors.hpp"

namespace debias {

BatchSchedule build_geometric_schedule(std::int64_t a, std::int64_t ratio, std::int64_t n_total) {
  if (a < 1) throw Error(ErrorCode::InvalidParams, "smallest batch size must be >= 1");
  if (ratio < 2) throw Error(ErrorCode::InvalidRatio, "common ratio must be >= 2");
  if (n_total < a) throw Error(ErrorCode::InvalidParams, "total size smaller than first batch");

  BatchSchedule s;
  s.a = a;
  s.ratio = ratio;
  std::int64_t size = a;
  for (;;) {
    s.sizes.push_back(size);
    if (size == n_total) break;
    if (size > n_total / ratio) {
      throw Error(ErrorCode::NonIntegralLevels,
                  "N/a = " + std::to_string(n_total) + "/" + std::to_string(a) +
                      " is not a power of the ratio " + std::to_string(ratio));
    }
    size *= ratio;
  }
  s.levels = static_cast<int>(s.sizes.size());
  s.cumulative.resize(s.sizes.size());
  std::int64_t acc = 0;
  for (std::size_t t = 0; t < s.sizes.size(); ++t) {
    acc += s.sizes[t];
    s.cumulative[t] = acc;
  }
  return s;
}

std::int64_t largest_admissible_total(std::int64_t a, std::int64_t ratio, std::int64_t n_total) {
  if (a < 1 || ratio < 2 || n_total < a) {
    throw Error(ErrorCode::InvalidParams, "no admissible schedule total");
  }
  std::int64_t size = a;
  while (size <= n_total / ratio) size *= ratio;
  return size;
}

TruncationDistribution build_truncation_geometric(double alpha, int levels) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonPositiveAlpha, "alpha must be positive");
  if (levels < 1) throw Error(ErrorCode::InvalidParams, "support size must be >= 1");

  TruncationDistribution d;
  d.alpha = alpha;
  d.levels = levels;
  d.alpha_above_one = alpha > 1.0;
  d.probs.resize(static_cast<std::size_t>(levels));
  d.tails.resize(static_cast<std::size_t>(levels));

  double z = 0.0;
  for (int t = 1; t <= levels; ++t) z += std::exp2(-alpha * t);
  d.normalizer = z;
  for (int t = 1; t <= levels; ++t) d.probs[static_cast<std::size_t>(t - 1)] = std::exp2(-alpha * t) / z;

  const double denom = 1.0 - std::exp2(-alpha * levels);
  if (levels == 1) {
    d.probs[0] = 1.0;
    d.tails[0] = 1.0;
    return d;
  }
  for (int t = 1; t <= levels; ++t) {
    d.tails[static_cast<std::size_t>(t - 1)] =
        (std::exp2(-alpha * (t - 1)) - std::exp2(-alpha * levels)) / denom;
  }
  d.tails[0] = 1.0;
  return d;
}

int sample_truncation(const TruncationDistribution& dist, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int t = 0; t < dist.levels; ++t) {
    acc += dist.probs[static_cast<std::size_t>(t)];
    if (u < acc) return t + 1;
  }
  return dist.levels;
}

double expected_likelihood_evals(const BatchSchedule& schedule, const TruncationDistribution& dist,
                                 const CostModel& cost) {
  if (dist.levels != schedule.levels) {
    throw Error(ErrorCode::LengthMismatch, "truncation support does not match schedule depth");
  }
  double e = 0.0;
  for (int t = 0; t < schedule.levels; ++t) {
    e += dist.probs[static_cast<std::size_t>(t)] *
         static_cast<double>(schedule.cumulative[static_cast<std::size_t>(t)]);
  }
  return static_cast<double>(cost.chain_length) * cost.per_point_cost * e;
}

SecondMomentBound second_moment_bound(const ConvergenceFit& fit, double alpha, std::int64_t a,
                                      int levels) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonPositiveAlpha, "alpha must be positive");
  if (levels < 1) throw Error(ErrorCode::InvalidParams, "levels must be >= 1");
  const double beta = fit.beta;
  double sum = 0.0;
  for (int t = 1; t <= levels; ++t) {
    // 2^((beta-alpha)(t-1)) - 2^(beta(t-1) - alpha L), factored to avoid
    // overflow for large beta * L.
    const double denom = std::exp2(beta * (t - 1)) *
                         (std::exp2(-alpha * (t - 1)) - std::exp2(-alpha * levels));
    sum += 1.0 / denom;
  }
  SecondMomentBound b;
  b.value = fit.c * std::exp2(beta) * std::pow(static_cast<double>(a), -beta) *
            (1.0 - std::exp2(-alpha * levels)) * sum;
  b.diverging = alpha >= beta;
  return b;
}

double work_variance_product(double alpha, std::int64_t a, std::int64_t ratio,
                             std::int64_t n_total, const ConvergenceFit& fit,
                             const CostModel& cost) {
  const std::int64_t admissible = largest_admissible_total(a, ratio, n_total);
  const BatchSchedule schedule = build_geometric_schedule(a, ratio, admissible);
  const TruncationDistribution dist = build_truncation_geometric(alpha, schedule.levels);
  const double work = expected_likelihood_evals(schedule, dist, cost);
  return work * second_moment_bound(fit, alpha, a, schedule.levels).value;
}

TuneResult tune_alpha(std::int64_t a, std::int64_t ratio, std::int64_t n_total,
                      const ConvergenceFit& fit, const CostModel& cost) {
  constexpr double kEdge = 0.01;
  constexpr double kTol = 1e-4;
  if (!(fit.beta > 2 * kEdge)) {
    throw Error(ErrorCode::NoFiniteMinimum, "beta too small to leave a tuning interval");
  }
  const auto objective = [&](double alpha) {
    return work_variance_product(alpha, a, ratio, n_total, fit, cost);
  };
  double lo = kEdge;
  double hi = fit.beta - kEdge;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > kTol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  TuneResult r;
  r.alpha = 0.5 * (lo + hi);
  r.work_variance = objective(r.alpha);
  return r;
}

ConvergenceFit fit_beta(const std::vector<double>& sizes, const std::vector<double>& squared_diffs) {
  if (sizes.size() != squared_diffs.size()) {
    throw Error(ErrorCode::LengthMismatch, "sizes and squared differences differ in length");
  }
  if (sizes.size() < 3) throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0) || !(squared_diffs[i] > 0.0)) {
      throw Error(ErrorCode::DegenerateInput, "all points must be positive");
    }
  }
  const bool all_equal = std::all_of(squared_diffs.begin(), squared_diffs.end(),
                                     [&](double d) { return d == squared_diffs.front(); });
  if (all_equal) {
    ConvergenceFit f;
    f.c = squared_diffs.front();
    f.beta = 0.0;
    f.residual = 0.0;
    f.degenerate = true;
    return f;
  }

  const std::size_t n = sizes.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(sizes[i]);
    const double y = std::log(squared_diffs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / dn;

  ConvergenceFit f;
  f.beta = -slope;
  f.c = std::exp(intercept);
  f.residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(squared_diffs[i]) - (intercept + slope * std::log(sizes[i]));
    f.residual += r * r;
  }
  return f;
}

double asymptotic_tradeoff_expression(double alpha, std::int64_t a, std::int64_t n_total,
                                      double beta) {
  const double da = static_cast<double>(a);
  const double dn = static_cast<double>(n_total);
  return std::pow(da, alpha) * (1.0 - std::exp2(-alpha)) /
         ((1.0 - std::exp2(alpha - 1.0)) * (1.0 - std::exp2(alpha - beta))) *
         std::pow(dn, 1.0 - alpha);
}

}  // namespace debias
