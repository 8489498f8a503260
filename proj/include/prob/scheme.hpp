#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/rational.hpp"

namespace prob {

// A finite outcome set with a strictly positive rational mass on each
// outcome, summing exactly to 1. Outcomes are kept sorted, so two schemes
// compare equal iff they have the same labels with the same masses.
class Scheme {
 public:
  static Scheme make(std::vector<OutcomeLabel> outcomes,
                     std::vector<Rational> masses) {
    require(outcomes.size() == masses.size(), errc::length_mismatch,
            "outcome and mass sequences differ in length");
    require(!outcomes.empty(), errc::empty_support, "scheme with no outcomes");
    std::vector<std::size_t> order(outcomes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return outcomes[a] < outcomes[b];
    });
    Scheme s;
    s.outcomes_.reserve(outcomes.size());
    s.mass_.reserve(masses.size());
    Rational total = 0;
    for (std::size_t idx : order) {
      if (!s.outcomes_.empty())
        require(s.outcomes_.back() != outcomes[idx], errc::duplicate_label,
                "duplicate outcome '" + outcomes[idx].str() + "'");
      require(masses[idx] > 0, errc::non_positive_mass,
              "mass of '" + outcomes[idx].str() + "' is " + masses[idx].str());
      total += masses[idx];
      s.outcomes_.push_back(std::move(outcomes[idx]));
      s.mass_.push_back(std::move(masses[idx]));
    }
    require(total == 1, errc::mass_not_normalized,
            "masses sum to " + total.str());
    return s;
  }

  static Scheme uniform(std::vector<OutcomeLabel> labels) {
    require(!labels.empty(), errc::empty_support, "uniform scheme on empty set");
    Rational each(1, static_cast<long long>(labels.size()));
    std::vector<Rational> masses(labels.size(), each);
    return make(std::move(labels), std::move(masses));
  }

  static Scheme point(OutcomeLabel label) {
    return make({std::move(label)}, {Rational(1)});
  }

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<OutcomeLabel>& outcomes() const { return outcomes_; }
  const std::vector<Rational>& masses() const { return mass_; }

  const OutcomeLabel& outcome(std::size_t i) const { return outcomes_[i]; }
  const Rational& mass_at(std::size_t i) const { return mass_[i]; }

  bool contains(const OutcomeLabel& l) const {
    return std::binary_search(outcomes_.begin(), outcomes_.end(), l);
  }

  std::size_t index_of(const OutcomeLabel& l) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), l);
    require(it != outcomes_.end() && *it == l, errc::unknown_label,
            "outcome '" + l.str() + "' not in scheme");
    return static_cast<std::size_t>(it - outcomes_.begin());
  }

  const Rational& mass(const OutcomeLabel& l) const { return mass_[index_of(l)]; }

  bool is_uniform() const {
    for (const auto& m : mass_)
      if (m != mass_[0]) return false;
    return true;
  }

  friend bool operator==(const Scheme& a, const Scheme& b) {
    return a.outcomes_ == b.outcomes_ && a.mass_ == b.mass_;
  }
  friend bool operator!=(const Scheme& a, const Scheme& b) { return !(a == b); }

 private:
  Scheme() = default;

  std::vector<OutcomeLabel> outcomes_;  // sorted
  std::vector<Rational> mass_;          // aligned with outcomes_
};

inline Scheme make_scheme(std::vector<OutcomeLabel> outcomes,
                          std::vector<Rational> masses) {
  return Scheme::make(std::move(outcomes), std::move(masses));
}

inline Scheme uniform_scheme(std::vector<OutcomeLabel> labels) {
  return Scheme::uniform(std::move(labels));
}

// Uniform scheme on {"1", ..., "n"}.
inline Scheme uniform_range_scheme(int n) {
  require(n >= 1, errc::empty_support, "uniform scheme on empty range");
  std::vector<OutcomeLabel> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) labels.push_back(OutcomeLabel::atom(std::to_string(i)));
  return Scheme::uniform(std::move(labels));
}

}  // namespace prob
