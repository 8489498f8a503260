#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prob/bundle.hpp"
#include "prob/errors.hpp"
#include "prob/partition.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"

namespace prob {

// E_A as the composite pullback(fiber_average(.)) through the quotient
// bundle of the partition; the orthogonal projection onto the subalgebra.
inline RandomVariable cond_expectation(const RandomVariable& x, const Partition& p) {
  require_same_domain(x.domain(), p.domain());
  Bundle pi = partition_to_bundle(p);
  return pullback(pi, fiber_average(pi, x));
}

inline Rational cond_probability(const Event& b, const Event& a) {
  require_same_domain(b.domain(), a.domain());
  require(!a.is_empty(), errc::empty_conditioning_event,
          "conditioning on the empty event");
  return probability(b.intersect(a)) / probability(a);
}

inline RandomVariable cond_covariance(const RandomVariable& x,
                                      const RandomVariable& y,
                                      const Partition& p) {
  require_same_domain(x.domain(), y.domain());
  RandomVariable cx = x - cond_expectation(x, p);
  RandomVariable cy = y - cond_expectation(y, p);
  return cond_expectation(cx * cy, p);
}

inline RandomVariable cond_variance(const RandomVariable& x, const Partition& p) {
  return cond_covariance(x, x, p);
}

inline Rational covariance(const RandomVariable& x, const RandomVariable& y) {
  require_same_domain(x.domain(), y.domain());
  return inner_product(x - expectation(x), y - expectation(y));
}

inline Rational variance(const RandomVariable& x) { return covariance(x, x); }

// Law of total expectation, checked: E Y against the sum of fiber means of Y
// over the distribution scheme of X, both computed exactly.
inline bool check_total_expectation(const RandomVariable& y, const RandomFunction& x) {
  require_same_domain(y.domain(), x.domain());
  Rational lhs = expectation(y);
  DistributionScheme d = distribution_scheme(x);
  RandomVariable means = fiber_average(d.bundle, y);
  Rational rhs = 0;
  for (std::size_t j = 0; j < d.scheme.size(); ++j)
    rhs += means.value_at(j) * d.scheme.mass_at(j);
  return lhs == rhs;
}

// E f(X) from the distribution of X alone; f given as a finite table that
// must cover the range of X.
inline Rational lotus(const std::map<Rational, Rational>& f, const RandomVariable& x) {
  std::map<Rational, Rational> pmf;
  const auto& masses = x.domain().masses();
  for (std::size_t i = 0; i < masses.size(); ++i) {
    auto [it, fresh] = pmf.try_emplace(x.value_at(i), masses[i]);
    if (!fresh) it->second += masses[i];
  }
  Rational sum = 0;
  for (const auto& [value, mass] : pmf) {
    auto it = f.find(value);
    require(it != f.end(), errc::incomplete_table,
            "table has no entry for value " + value.str());
    sum += it->second * mass;
  }
  return sum;
}

struct CovarianceDecomposition {
  RandomVariable lhs;      // cov_coarse(X, Y)
  RandomVariable rhs_sum;  // E_coarse cov_fine(X,Y) + cov_coarse(E_fine X, E_fine Y)
};

// Law of total covariance across a refinement pair; both sides are returned
// for exact equality checking.
inline CovarianceDecomposition total_covariance_decomposition(
    const RandomVariable& x, const RandomVariable& y, const Partition& fine,
    const Partition& coarse) {
  require_same_domain(x.domain(), y.domain());
  require_same_domain(x.domain(), fine.domain());
  require(refines(fine, coarse), errc::not_a_refinement,
          "fine partition does not refine the coarse one");
  RandomVariable lhs = cond_covariance(x, y, coarse);
  RandomVariable rhs = cond_expectation(cond_covariance(x, y, fine), coarse) +
                       cond_covariance(cond_expectation(x, fine),
                                       cond_expectation(y, fine), coarse);
  return CovarianceDecomposition{std::move(lhs), std::move(rhs)};
}

struct VarianceComponents {
  Rational tss;         // sum over outcomes of (X - E X)^2
  Rational wss;         // sum over outcomes of (X - fiber mean)^2
  Rational bss_scaled;  // group size times sum over groups of (fiber mean - E X)^2
};

// The TSS = WSS + BSS split for a uniform scheme cut into equal groups.
inline VarianceComponents variance_components(const RandomVariable& x,
                                              const Partition& p) {
  require_same_domain(x.domain(), p.domain());
  require(x.domain().is_uniform(), errc::non_uniform_scheme,
          "components of variance need a uniform scheme");
  std::size_t n = p.blocks().front().size();
  for (const auto& block : p.blocks())
    require(block.size() == n, errc::unequal_block_sizes,
            "blocks differ in size");
  Rational mean = expectation(x);
  RandomVariable fiber_means = cond_expectation(x, p);
  Rational tss = 0, wss = 0, bss = 0;
  for (std::size_t i = 0; i < x.domain().size(); ++i) {
    Rational d = x.value_at(i) - mean;
    tss += d * d;
    Rational w = x.value_at(i) - fiber_means.value_at(i);
    wss += w * w;
  }
  Bundle pi = partition_to_bundle(p);
  RandomVariable group_means = fiber_average(pi, x);
  for (std::size_t j = 0; j < pi.base().size(); ++j) {
    Rational d = group_means.value_at(j) - mean;
    bss += d * d;
  }
  bss *= Rational(static_cast<long long>(n));
  return VarianceComponents{std::move(tss), std::move(wss), std::move(bss)};
}

}  // namespace prob
