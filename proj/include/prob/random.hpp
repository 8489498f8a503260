#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/rational.hpp"
#include "prob/scheme.hpp"

namespace prob {

inline void require_same_domain(const Scheme& a, const Scheme& b) {
  require(a == b, errc::domain_mismatch, "values live on different schemes");
}

// A total map from a scheme's outcomes to labels. Values are stored aligned
// with the domain's sorted outcome sequence.
class RandomFunction {
 public:
  RandomFunction(Scheme domain, std::vector<OutcomeLabel> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    require(values_.size() == domain_.size(), errc::incomplete_map,
            "value sequence does not match domain size");
  }

  RandomFunction(const Scheme& domain,
                 const std::map<OutcomeLabel, OutcomeLabel>& values)
      : RandomFunction(domain, from_map(domain, values)) {}

  static RandomFunction from_function(
      const Scheme& domain,
      const std::function<OutcomeLabel(const OutcomeLabel&)>& f) {
    std::vector<OutcomeLabel> vals;
    vals.reserve(domain.size());
    for (const auto& w : domain.outcomes()) vals.push_back(f(w));
    return RandomFunction(domain, std::move(vals));
  }

  const Scheme& domain() const { return domain_; }
  const std::vector<OutcomeLabel>& values() const { return values_; }
  const OutcomeLabel& value_at(std::size_t i) const { return values_[i]; }
  const OutcomeLabel& operator()(const OutcomeLabel& w) const {
    return values_[domain_.index_of(w)];
  }

  friend bool operator==(const RandomFunction& a, const RandomFunction& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }
  friend bool operator!=(const RandomFunction& a, const RandomFunction& b) {
    return !(a == b);
  }

 private:
  static std::vector<OutcomeLabel> from_map(
      const Scheme& domain, const std::map<OutcomeLabel, OutcomeLabel>& m) {
    require(m.size() == domain.size(), errc::incomplete_map,
            "map does not cover the domain exactly");
    std::vector<OutcomeLabel> vals;
    vals.reserve(domain.size());
    for (const auto& w : domain.outcomes()) {
      auto it = m.find(w);
      require(it != m.end(), errc::incomplete_map,
              "no value for outcome '" + w.str() + "'");
      vals.push_back(it->second);
    }
    return vals;
  }

  Scheme domain_;
  std::vector<OutcomeLabel> values_;
};

// A rational-valued random function.
class RandomVariable {
 public:
  RandomVariable(Scheme domain, std::vector<Rational> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    require(values_.size() == domain_.size(), errc::incomplete_map,
            "value sequence does not match domain size");
  }

  RandomVariable(const Scheme& domain,
                 const std::map<OutcomeLabel, Rational>& values)
      : RandomVariable(domain, from_map(domain, values)) {}

  static RandomVariable from_function(
      const Scheme& domain,
      const std::function<Rational(const OutcomeLabel&)>& f) {
    std::vector<Rational> vals;
    vals.reserve(domain.size());
    for (const auto& w : domain.outcomes()) vals.push_back(f(w));
    return RandomVariable(domain, std::move(vals));
  }

  static RandomVariable constant(const Scheme& domain, Rational c) {
    return RandomVariable(domain, std::vector<Rational>(domain.size(), c));
  }

  const Scheme& domain() const { return domain_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value_at(std::size_t i) const { return values_[i]; }
  const Rational& operator()(const OutcomeLabel& w) const {
    return values_[domain_.index_of(w)];
  }

  bool is_zero() const {
    for (const auto& v : values_)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const RandomVariable& a, const RandomVariable& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }
  friend bool operator!=(const RandomVariable& a, const RandomVariable& b) {
    return !(a == b);
  }

  // Pointwise algebra. Constants promote to constant variables here and
  // nowhere else.
  friend RandomVariable operator+(const RandomVariable& a, const RandomVariable& b) {
    return zip(a, b, [](const Rational& x, const Rational& y) { return x + y; });
  }
  friend RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) {
    return zip(a, b, [](const Rational& x, const Rational& y) { return x - y; });
  }
  friend RandomVariable operator*(const RandomVariable& a, const RandomVariable& b) {
    return zip(a, b, [](const Rational& x, const Rational& y) { return x * y; });
  }
  friend RandomVariable operator-(const RandomVariable& a) {
    return map(a, [](const Rational& x) { return -x; });
  }
  friend RandomVariable operator+(const RandomVariable& a, const Rational& c) {
    return map(a, [&](const Rational& x) { return x + c; });
  }
  friend RandomVariable operator+(const Rational& c, const RandomVariable& a) {
    return a + c;
  }
  friend RandomVariable operator-(const RandomVariable& a, const Rational& c) {
    return map(a, [&](const Rational& x) { return x - c; });
  }
  friend RandomVariable operator-(const Rational& c, const RandomVariable& a) {
    return map(a, [&](const Rational& x) { return c - x; });
  }
  friend RandomVariable operator*(const RandomVariable& a, const Rational& c) {
    return map(a, [&](const Rational& x) { return x * c; });
  }
  friend RandomVariable operator*(const Rational& c, const RandomVariable& a) {
    return a * c;
  }
  friend RandomVariable operator/(const RandomVariable& a, const Rational& c) {
    return map(a, [&](const Rational& x) { return x / c; });
  }

 private:
  static std::vector<Rational> from_map(const Scheme& domain,
                                        const std::map<OutcomeLabel, Rational>& m) {
    require(m.size() == domain.size(), errc::incomplete_map,
            "map does not cover the domain exactly");
    std::vector<Rational> vals;
    vals.reserve(domain.size());
    for (const auto& w : domain.outcomes()) {
      auto it = m.find(w);
      require(it != m.end(), errc::incomplete_map,
              "no value for outcome '" + w.str() + "'");
      vals.push_back(it->second);
    }
    return vals;
  }

  template <class F>
  static RandomVariable zip(const RandomVariable& a, const RandomVariable& b, F f) {
    require_same_domain(a.domain_, b.domain_);
    std::vector<Rational> vals;
    vals.reserve(a.values_.size());
    for (std::size_t i = 0; i < a.values_.size(); ++i)
      vals.push_back(f(a.values_[i], b.values_[i]));
    return RandomVariable(a.domain_, std::move(vals));
  }

  template <class F>
  static RandomVariable map(const RandomVariable& a, F f) {
    std::vector<Rational> vals;
    vals.reserve(a.values_.size());
    for (const auto& v : a.values_) vals.push_back(f(v));
    return RandomVariable(a.domain_, std::move(vals));
  }

  Scheme domain_;
  std::vector<Rational> values_;
};

// A subset of a scheme's outcomes.
class Event {
 public:
  Event(Scheme domain, const std::vector<OutcomeLabel>& members)
      : domain_(std::move(domain)), mask_(domain_.size(), 0) {
    for (const auto& m : members) mask_[domain_.index_of(m)] = 1;
  }

  static Event full(Scheme domain) {
    Event e(std::move(domain), {});
    std::fill(e.mask_.begin(), e.mask_.end(), 1);
    return e;
  }

  static Event empty(Scheme domain) { return Event(std::move(domain), {}); }

  static Event where(const Scheme& domain,
                     const std::function<bool(const OutcomeLabel&)>& pred) {
    Event e(domain, {});
    for (std::size_t i = 0; i < domain.size(); ++i)
      e.mask_[i] = pred(domain.outcome(i)) ? 1 : 0;
    return e;
  }

  const Scheme& domain() const { return domain_; }
  bool contains(const OutcomeLabel& w) const { return mask_[domain_.index_of(w)] != 0; }
  bool contains_index(std::size_t i) const { return mask_[i] != 0; }

  bool is_empty() const {
    return std::none_of(mask_.begin(), mask_.end(), [](char b) { return b != 0; });
  }

  std::vector<OutcomeLabel> members() const {
    std::vector<OutcomeLabel> out;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(domain_.outcome(i));
    return out;
  }

  Event intersect(const Event& other) const {
    require_same_domain(domain_, other.domain_);
    Event e(domain_, {});
    for (std::size_t i = 0; i < mask_.size(); ++i)
      e.mask_[i] = (mask_[i] && other.mask_[i]) ? 1 : 0;
    return e;
  }

 private:
  Scheme domain_;
  std::vector<char> mask_;  // aligned with domain outcomes
};

inline Rational expectation(const RandomVariable& x) {
  Rational sum = 0;
  const auto& masses = x.domain().masses();
  for (std::size_t i = 0; i < masses.size(); ++i)
    sum += x.value_at(i) * masses[i];
  return sum;
}

inline Rational inner_product(const RandomVariable& x, const RandomVariable& y) {
  require_same_domain(x.domain(), y.domain());
  Rational sum = 0;
  const auto& masses = x.domain().masses();
  for (std::size_t i = 0; i < masses.size(); ++i)
    sum += x.value_at(i) * y.value_at(i) * masses[i];
  return sum;
}

inline RandomVariable indicator(const Event& a) {
  std::vector<Rational> vals;
  vals.reserve(a.domain().size());
  for (std::size_t i = 0; i < a.domain().size(); ++i)
    vals.push_back(a.contains_index(i) ? Rational(1) : Rational(0));
  return RandomVariable(a.domain(), std::move(vals));
}

inline Rational probability(const Event& a) { return expectation(indicator(a)); }

// The mass function pr read as a random variable on its own scheme.
inline RandomVariable mass_variable(const Scheme& s) {
  return RandomVariable(s, s.masses());
}

// Tuple-valued pairing <X1,...,Xn>; with a single input the input itself.
inline RandomFunction joint(std::span<const RandomFunction> xs) {
  require(!xs.empty(), errc::empty_sequence, "joint of no random functions");
  for (std::size_t i = 1; i < xs.size(); ++i)
    require_same_domain(xs[0].domain(), xs[i].domain());
  if (xs.size() == 1) return xs[0];
  std::vector<OutcomeLabel> vals;
  const Scheme& dom = xs[0].domain();
  vals.reserve(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::vector<OutcomeLabel> parts;
    parts.reserve(xs.size());
    for (const auto& x : xs) parts.push_back(x.value_at(i));
    vals.push_back(OutcomeLabel::tuple(std::move(parts)));
  }
  return RandomFunction(dom, std::move(vals));
}

inline RandomFunction joint(std::initializer_list<RandomFunction> xs) {
  std::vector<RandomFunction> v(xs);
  return joint(std::span<const RandomFunction>(v));
}

inline RandomFunction joint(const std::vector<RandomFunction>& xs) {
  return joint(std::span<const RandomFunction>(xs));
}

// Views a random variable as a random function by naming each value with its
// canonical rational text.
inline RandomFunction to_random_function(const RandomVariable& x) {
  std::vector<OutcomeLabel> vals;
  vals.reserve(x.domain().size());
  for (const auto& v : x.values()) vals.push_back(OutcomeLabel::atom(v.str()));
  return RandomFunction(x.domain(), std::move(vals));
}

// Reads tuple-labelled outcomes back as coordinate functions; used for path
// schemes built by markov_build and for fiber product schemes.
inline RandomFunction coordinate_function(const Scheme& s, std::size_t k) {
  std::vector<OutcomeLabel> vals;
  vals.reserve(s.size());
  for (const auto& w : s.outcomes()) vals.push_back(w.component(k));
  return RandomFunction(s, std::move(vals));
}

}  // namespace prob
