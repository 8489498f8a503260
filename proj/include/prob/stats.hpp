#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prob/condexp.hpp"
#include "prob/errors.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"

namespace prob {

struct RegressionResult {
  Rational slope;
  Rational intercept;
  RandomVariable fitted;    // slope * X + intercept
  RandomVariable residual;  // Y - fitted
  Rational var_fitted;
  Rational var_residual;
  std::optional<Rational> r_squared;  // absent when var Y = 0
};

// Orthogonal projection of Y onto span{1, X}.
inline RegressionResult linear_regression(const RandomVariable& x,
                                          const RandomVariable& y) {
  require_same_domain(x.domain(), y.domain());
  Rational var_x = variance(x);
  require(var_x > 0, errc::degenerate_regressor, "var X = 0");
  Rational cov_xy = covariance(x, y);
  Rational slope = cov_xy / var_x;
  Rational intercept = expectation(y) - slope * expectation(x);
  RandomVariable fitted = slope * x + intercept;
  RandomVariable residual = y - fitted;
  Rational var_fitted = cov_xy * cov_xy / var_x;
  Rational var_residual = variance(residual);
  Rational var_y = variance(y);
  std::optional<Rational> r2;
  if (var_y > 0) r2 = var_fitted / var_y;
  return RegressionResult{std::move(slope),      std::move(intercept),
                          std::move(fitted),     std::move(residual),
                          std::move(var_fitted), std::move(var_residual),
                          std::move(r2)};
}

struct ChebyshevCheck {
  Rational lhs;    // Pr(|X - E X| >= eps), by outcome enumeration
  Rational bound;  // var X / eps^2
};

inline ChebyshevCheck chebyshev_check(const RandomVariable& x, const Rational& eps) {
  require(eps > 0, errc::non_positive_epsilon, "epsilon must be positive");
  Rational mean = expectation(x);
  Rational lhs = 0;
  const auto& masses = x.domain().masses();
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (abs(x.value_at(i) - mean) >= eps) lhs += masses[i];
  return ChebyshevCheck{std::move(lhs), variance(x) / (eps * eps)};
}

struct WllnCertificate {
  Rational var_mean;  // var of the average of the inputs
  Rational bound;     // K / (n eps^2)
};

// Weak law of large numbers at finite n: verifies the inputs are pairwise
// uncorrelated with variances at most K, then certifies the variance of the
// sample mean and the Chebyshev bound K/(n eps^2).
inline WllnCertificate wlln_certificate(std::span<const RandomVariable> xs,
                                        const Rational& k, const Rational& eps) {
  require(!xs.empty(), errc::empty_sequence, "no random variables given");
  require(eps > 0, errc::non_positive_epsilon, "epsilon must be positive");
  for (std::size_t i = 1; i < xs.size(); ++i)
    require_same_domain(xs[0].domain(), xs[i].domain());
  Rational var_sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational v = variance(xs[i]);
    require(v <= k, errc::variance_bound_violated,
            "var of input " + std::to_string(i + 1) + " is " + v.str() +
                " > K = " + k.str());
    var_sum += v;
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      require(covariance(xs[i], xs[j]).is_zero(), errc::correlated_inputs,
              "inputs " + std::to_string(i + 1) + " and " +
                  std::to_string(j + 1) + " are correlated");
  }
  auto n = Rational(static_cast<long long>(xs.size()));
  RandomVariable mean_var = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) mean_var = mean_var + xs[i];
  mean_var = mean_var / n;
  Rational var_mean = variance(mean_var);
  // Orthogonality of the centered summands makes this an identity, not an
  // approximation; a mismatch would be an engine bug.
  require(var_mean == var_sum / (n * n), errc::correlated_inputs,
          "variance of the mean disagrees with the orthogonal sum");
  return WllnCertificate{std::move(var_mean), k / (n * eps * eps)};
}

inline WllnCertificate wlln_certificate(const std::vector<RandomVariable>& xs,
                                        const Rational& k, const Rational& eps) {
  return wlln_certificate(std::span<const RandomVariable>(xs), k, eps);
}

}  // namespace prob
