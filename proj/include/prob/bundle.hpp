#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"
#include "prob/scheme.hpp"

namespace prob {

// A surjective map between two schemes under which every base outcome
// carries exactly the mass of its fiber. Bundles are the morphisms of the
// engine: quotients of sample spaces, carriers of conditional structure.
class Bundle {
 public:
  // Verifies both bundle invariants exactly.
  static Bundle make(Scheme total, Scheme base,
                     const std::map<OutcomeLabel, OutcomeLabel>& map) {
    require(map.size() == total.size(), errc::incomplete_map,
            "bundle map does not cover the total scheme exactly");
    std::vector<std::size_t> idx;
    idx.reserve(total.size());
    for (const auto& w : total.outcomes()) {
      auto it = map.find(w);
      require(it != map.end(), errc::incomplete_map,
              "bundle map misses outcome '" + w.str() + "'");
      idx.push_back(base.index_of(it->second));
    }
    return checked(std::move(total), std::move(base), std::move(idx));
  }

  static Bundle make(Scheme total, Scheme base, const RandomFunction& map) {
    require(map.domain() == total, errc::domain_mismatch,
            "bundle map not defined on the total scheme");
    std::vector<std::size_t> idx;
    idx.reserve(total.size());
    for (const auto& v : map.values()) idx.push_back(base.index_of(v));
    return checked(std::move(total), std::move(base), std::move(idx));
  }

  // Endows the range of a surjection with its fiber masses; any surjection
  // from a scheme induces a canonical bundle this way.
  static Bundle induced(Scheme total, const std::vector<OutcomeLabel>& values) {
    require(values.size() == total.size(), errc::incomplete_map,
            "value sequence does not match the total scheme");
    std::map<OutcomeLabel, Rational> base_mass;
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto [it, fresh] = base_mass.try_emplace(values[i], total.mass_at(i));
      if (!fresh) it->second += total.mass_at(i);
    }
    std::vector<OutcomeLabel> labels;
    std::vector<Rational> masses;
    labels.reserve(base_mass.size());
    masses.reserve(base_mass.size());
    for (auto& [l, m] : base_mass) {
      labels.push_back(l);
      masses.push_back(std::move(m));
    }
    Scheme base = Scheme::make(std::move(labels), std::move(masses));
    std::vector<std::size_t> idx;
    idx.reserve(values.size());
    for (const auto& v : values) idx.push_back(base.index_of(v));
    return Bundle(std::move(total), std::move(base), std::move(idx));
  }

  static Bundle induced(const RandomFunction& f) {
    return induced(f.domain(), f.values());
  }

  static Bundle identity(Scheme s) {
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Scheme copy = s;
    return Bundle(std::move(copy), std::move(s), std::move(idx));
  }

  static Bundle terminal(Scheme total,
                         OutcomeLabel point = OutcomeLabel::atom("pt")) {
    std::vector<std::size_t> idx(total.size(), 0);
    Scheme base = Scheme::point(std::move(point));
    return Bundle(std::move(total), std::move(base), std::move(idx));
  }

  const Scheme& total() const { return total_; }
  const Scheme& base() const { return base_; }

  std::size_t base_index_of(std::size_t total_index) const {
    return map_[total_index];
  }
  const OutcomeLabel& map_at(std::size_t total_index) const {
    return base_.outcome(map_[total_index]);
  }
  const OutcomeLabel& operator()(const OutcomeLabel& w) const {
    return map_at(total_.index_of(w));
  }

  std::vector<OutcomeLabel> map_values() const {
    std::vector<OutcomeLabel> out;
    out.reserve(map_.size());
    for (std::size_t i : map_) out.push_back(base_.outcome(i));
    return out;
  }

  friend bool operator==(const Bundle& a, const Bundle& b) {
    return a.total_ == b.total_ && a.base_ == b.base_ && a.map_ == b.map_;
  }
  friend bool operator!=(const Bundle& a, const Bundle& b) { return !(a == b); }

  friend Bundle compose(const Bundle& outer, const Bundle& inner);

 private:
  Bundle(Scheme total, Scheme base, std::vector<std::size_t> map)
      : total_(std::move(total)), base_(std::move(base)), map_(std::move(map)) {}

  static Bundle checked(Scheme total, Scheme base, std::vector<std::size_t> idx) {
    std::vector<Rational> fiber_mass(base.size(), Rational(0));
    std::vector<char> hit(base.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      fiber_mass[idx[i]] += total.mass_at(i);
      hit[idx[i]] = 1;
    }
    for (std::size_t j = 0; j < base.size(); ++j)
      require(hit[j] != 0, errc::not_surjective,
              "no outcome maps to base point '" + base.outcome(j).str() + "'");
    for (std::size_t j = 0; j < base.size(); ++j)
      require(fiber_mass[j] == base.mass_at(j), errc::not_measure_preserving,
              "fiber over '" + base.outcome(j).str() + "' has mass " +
                  fiber_mass[j].str() + ", base mass is " +
                  base.mass_at(j).str());
    return Bundle(std::move(total), std::move(base), std::move(idx));
  }

  Scheme total_;
  Scheme base_;
  std::vector<std::size_t> map_;  // total outcome index -> base outcome index
};

inline Bundle make_bundle(Scheme total, Scheme base,
                          const std::map<OutcomeLabel, OutcomeLabel>& map) {
  return Bundle::make(std::move(total), std::move(base), map);
}

inline Bundle induced_bundle(Scheme total, const std::vector<OutcomeLabel>& values) {
  return Bundle::induced(std::move(total), values);
}

inline Bundle identity_bundle(Scheme s) { return Bundle::identity(std::move(s)); }

inline Bundle terminal_bundle(Scheme total,
                              OutcomeLabel point = OutcomeLabel::atom("pt")) {
  return Bundle::terminal(std::move(total), std::move(point));
}

// Composition is again a bundle: fibers of the composite are unions of
// fibers, so measure preservation carries over.
inline Bundle compose(const Bundle& outer, const Bundle& inner) {
  require(inner.base() == outer.total(), errc::scheme_mismatch,
          "inner base and outer total differ");
  std::vector<std::size_t> idx;
  idx.reserve(inner.map_.size());
  for (std::size_t i : inner.map_) idx.push_back(outer.map_[i]);
  return Bundle(inner.total_, outer.base_, std::move(idx));
}

// The fiber over a base point, renormalized by the base mass.
inline Scheme fiber_scheme(const Bundle& pi, const OutcomeLabel& base_point) {
  std::size_t j = pi.base().index_of(base_point);
  const Rational& denom = pi.base().mass_at(j);
  std::vector<OutcomeLabel> labels;
  std::vector<Rational> masses;
  for (std::size_t i = 0; i < pi.total().size(); ++i) {
    if (pi.base_index_of(i) == j) {
      labels.push_back(pi.total().outcome(i));
      masses.push_back(pi.total().mass_at(i) / denom);
    }
  }
  return Scheme::make(std::move(labels), std::move(masses));
}

// Pullback along the bundle: precomposition, an algebra map embedding base
// variables as fiberwise-constant total variables.
inline RandomVariable pullback(const Bundle& pi, const RandomVariable& y) {
  require(y.domain() == pi.base(), errc::domain_mismatch,
          "pullback input must live on the base scheme");
  std::vector<Rational> vals;
  vals.reserve(pi.total().size());
  for (std::size_t i = 0; i < pi.total().size(); ++i)
    vals.push_back(y.value_at(pi.base_index_of(i)));
  return RandomVariable(pi.total(), std::move(vals));
}

// Fiber summation: the linear map sending 1_w to 1_{pi(w)}.
inline RandomVariable fiber_sum(const Bundle& pi, const RandomVariable& x) {
  require(x.domain() == pi.total(), errc::domain_mismatch,
          "fiber_sum input must live on the total scheme");
  std::vector<Rational> vals(pi.base().size(), Rational(0));
  for (std::size_t i = 0; i < pi.total().size(); ++i)
    vals[pi.base_index_of(i)] += x.value_at(i);
  return RandomVariable(pi.base(), std::move(vals));
}

// Fiber averaging, built as multiply-by-mass, sum, divide-by-base-mass. The
// value over a base point is the expectation of x on the fiber scheme.
inline RandomVariable fiber_average(const Bundle& pi, const RandomVariable& x) {
  require(x.domain() == pi.total(), errc::domain_mismatch,
          "fiber_average input must live on the total scheme");
  RandomVariable weighted = fiber_sum(pi, x * mass_variable(pi.total()));
  std::vector<Rational> vals;
  vals.reserve(pi.base().size());
  for (std::size_t j = 0; j < pi.base().size(); ++j)
    vals.push_back(weighted.value_at(j) / pi.base().mass_at(j));
  return RandomVariable(pi.base(), std::move(vals));
}

struct DistributionScheme {
  Scheme scheme;  // [X]: the range of X with masses Pr(X = x)
  Bundle bundle;  // the induced bundle domain -> [X]
};

inline DistributionScheme distribution_scheme(const RandomFunction& x) {
  Bundle b = Bundle::induced(x.domain(), x.values());
  return DistributionScheme{b.base(), std::move(b)};
}

}  // namespace prob
