#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prob/bundle.hpp"
#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"
#include "prob/scheme.hpp"

namespace prob {

// The conditionally independent gluing of two bundles over a common base:
// pairs agreeing over the base, with mass pr1 * pr2 / pr0.
struct FiberProduct {
  Scheme product;  // outcomes are pairs <w1,w2> with pi1(w1) = pi2(w2)
  Bundle theta1;   // product -> total of pi1
  Bundle theta2;   // product -> total of pi2
  Bundle down;     // product -> common base, the composite
};

inline FiberProduct fiber_product(const Bundle& pi1, const Bundle& pi2) {
  require(pi1.base() == pi2.base(), errc::base_mismatch,
          "bundles do not share a base scheme");
  std::vector<OutcomeLabel> labels;
  std::vector<Rational> masses;
  std::map<OutcomeLabel, OutcomeLabel> to_first, to_second;
  for (std::size_t i = 0; i < pi1.total().size(); ++i) {
    for (std::size_t j = 0; j < pi2.total().size(); ++j) {
      if (pi1.base_index_of(i) != pi2.base_index_of(j)) continue;
      OutcomeLabel point =
          OutcomeLabel::pair(pi1.total().outcome(i), pi2.total().outcome(j));
      masses.push_back(pi1.total().mass_at(i) * pi2.total().mass_at(j) /
                       pi1.base().mass_at(pi1.base_index_of(i)));
      to_first.emplace(point, pi1.total().outcome(i));
      to_second.emplace(point, pi2.total().outcome(j));
      labels.push_back(std::move(point));
    }
  }
  Scheme product = Scheme::make(std::move(labels), std::move(masses));
  Bundle theta1 = Bundle::make(product, pi1.total(), to_first);
  Bundle theta2 = Bundle::make(product, pi2.total(), to_second);
  Bundle down = compose(pi1, theta1);
  return FiberProduct{std::move(product), std::move(theta1), std::move(theta2),
                      std::move(down)};
}

struct BaseChangeCheck {
  RandomVariable lhs;  // theta1_* theta2^# a2
  RandomVariable rhs;  // pi1^# pi2_* a2
};

// Both routes of the base-change identity, returned for exact comparison.
inline BaseChangeCheck base_change_check(const Bundle& pi1, const Bundle& pi2,
                                         const RandomVariable& a2) {
  require(pi1.base() == pi2.base(), errc::base_mismatch,
          "bundles do not share a base scheme");
  require(a2.domain() == pi2.total(), errc::domain_mismatch,
          "input must live on the second total scheme");
  FiberProduct fp = fiber_product(pi1, pi2);
  RandomVariable lhs = fiber_sum(fp.theta1, pullback(fp.theta2, a2));
  RandomVariable rhs = pullback(pi1, fiber_sum(pi2, a2));
  return BaseChangeCheck{std::move(lhs), std::move(rhs)};
}

// A candidate isomorphism of schemes: a label map from source outcomes, to
// be verified as a mass-preserving bijection by check_scheme_iso.
struct SchemeIso {
  Scheme source;
  Scheme target;
  std::vector<OutcomeLabel> map;  // aligned with source outcomes

  SchemeIso(Scheme src, Scheme tgt, std::vector<OutcomeLabel> m)
      : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
    require(map.size() == source.size(), errc::incomplete_map,
            "iso map does not cover the source exactly");
  }

  SchemeIso(const Scheme& src, Scheme tgt,
            const std::map<OutcomeLabel, OutcomeLabel>& m)
      : SchemeIso(src, std::move(tgt), aligned(src, m)) {}

  const OutcomeLabel& operator()(const OutcomeLabel& w) const {
    return map[source.index_of(w)];
  }

 private:
  static std::vector<OutcomeLabel> aligned(
      const Scheme& src, const std::map<OutcomeLabel, OutcomeLabel>& m) {
    std::vector<OutcomeLabel> out;
    out.reserve(src.size());
    for (const auto& w : src.outcomes()) {
      auto it = m.find(w);
      require(it != m.end(), errc::incomplete_map,
              "iso map misses outcome '" + w.str() + "'");
      out.push_back(it->second);
    }
    return out;
  }
};

struct IsoFailure {
  enum class Kind {
    unknown_target,   // image label is not a target outcome
    duplicate_image,  // two source outcomes share an image
    missing_target,   // a target outcome is never hit
    mass_mismatch,    // bijective at this point but masses differ
  };
  Kind kind;
  OutcomeLabel where;  // source outcome, or the missed target outcome
  std::optional<Rational> source_mass;
  std::optional<Rational> target_mass;

  std::string describe() const {
    switch (kind) {
      case Kind::unknown_target:
        return "image of '" + where.str() + "' is not a target outcome";
      case Kind::duplicate_image:
        return "'" + where.str() + "' shares its image with another outcome";
      case Kind::missing_target:
        return "target outcome '" + where.str() + "' is not attained";
      case Kind::mass_mismatch:
        return "'" + where.str() + "' has mass " + source_mass->str() +
               " but its image has mass " + target_mass->str();
    }
    return "";
  }
};

struct IsoReport {
  bool valid = false;
  std::optional<IsoFailure> failure;
  explicit operator bool() const { return valid; }
};

// Verifies bijectivity first, then pointwise mass preservation; reports the
// first failure in canonical outcome order.
inline IsoReport check_scheme_iso(const SchemeIso& iso) {
  std::vector<std::size_t> image(iso.source.size());
  std::vector<char> hit(iso.target.size(), 0);
  for (std::size_t i = 0; i < iso.source.size(); ++i) {
    if (!iso.target.contains(iso.map[i]))
      return {false, IsoFailure{IsoFailure::Kind::unknown_target,
                                iso.source.outcome(i), {}, {}}};
    image[i] = iso.target.index_of(iso.map[i]);
    if (hit[image[i]])
      return {false, IsoFailure{IsoFailure::Kind::duplicate_image,
                                iso.source.outcome(i), {}, {}}};
    hit[image[i]] = 1;
  }
  for (std::size_t j = 0; j < iso.target.size(); ++j)
    if (!hit[j])
      return {false, IsoFailure{IsoFailure::Kind::missing_target,
                                iso.target.outcome(j), {}, {}}};
  for (std::size_t i = 0; i < iso.source.size(); ++i) {
    if (iso.source.mass_at(i) != iso.target.mass_at(image[i]))
      return {false, IsoFailure{IsoFailure::Kind::mass_mismatch,
                                iso.source.outcome(i), iso.source.mass_at(i),
                                iso.target.mass_at(image[i])}};
  }
  return {true, {}};
}

struct CondIndependence {
  bool independent = false;
  std::optional<IsoFailure> witness;  // set when not independent
  explicit operator bool() const { return independent; }
};

// X and Y are conditionally independent given Z iff the canonical injection
// [<X,Y,Z>] -> [<X,Z>] x_[Z] [<Y,Z>] is an isomorphism of schemes.
inline CondIndependence cond_independent(const RandomFunction& x,
                                         const RandomFunction& y,
                                         const RandomFunction& z) {
  require_same_domain(x.domain(), y.domain());
  require_same_domain(x.domain(), z.domain());
  DistributionScheme dxz = distribution_scheme(joint({x, z}));
  DistributionScheme dyz = distribution_scheme(joint({y, z}));
  DistributionScheme dz = distribution_scheme(z);
  DistributionScheme dxyz = distribution_scheme(joint({x, y, z}));
  Bundle pi_xz = Bundle::make(dxz.scheme, dz.scheme,
                              coordinate_function(dxz.scheme, 1));
  Bundle pi_yz = Bundle::make(dyz.scheme, dz.scheme,
                              coordinate_function(dyz.scheme, 1));
  FiberProduct fp = fiber_product(pi_xz, pi_yz);
  std::vector<OutcomeLabel> map;
  map.reserve(dxyz.scheme.size());
  for (const auto& w : dxyz.scheme.outcomes()) {
    const OutcomeLabel& xv = w.component(0);
    const OutcomeLabel& yv = w.component(1);
    const OutcomeLabel& zv = w.component(2);
    map.push_back(OutcomeLabel::pair(OutcomeLabel::pair(xv, zv),
                                     OutcomeLabel::pair(yv, zv)));
  }
  IsoReport rep =
      check_scheme_iso(SchemeIso(dxyz.scheme, fp.product, std::move(map)));
  return CondIndependence{rep.valid, rep.failure};
}

struct ZipUp {
  Bundle zip;     // O2 x_O0 O2' -> Xi, pairing the two middle images
  SchemeIso iso;  // onto (O2 x_O1 Xi) x_Xi (Xi x_O1' O2')
};

// The zip-up of two compose-compatible towers over a common base, together
// with the canonical identification as a fiber product over Xi.
inline ZipUp zip_up(const Bundle& pi12, const Bundle& pi01, const Bundle& pi12p,
                    const Bundle& pi01p) {
  require(pi12.base() == pi01.total(), errc::composition_mismatch,
          "left tower does not compose");
  require(pi12p.base() == pi01p.total(), errc::composition_mismatch,
          "right tower does not compose");
  require(pi01.base() == pi01p.base(), errc::base_mismatch,
          "towers do not share a base scheme");
  FiberProduct big = fiber_product(compose(pi01, pi12), compose(pi01p, pi12p));
  FiberProduct xi = fiber_product(pi01, pi01p);

  std::map<OutcomeLabel, OutcomeLabel> pairing;
  for (const auto& w : big.product.outcomes()) {
    const OutcomeLabel& w2 = w.component(0);
    const OutcomeLabel& w2p = w.component(1);
    pairing.emplace(w, OutcomeLabel::pair(pi12(w2), pi12p(w2p)));
  }
  Bundle zip = Bundle::make(big.product, xi.product, pairing);

  FiberProduct left = fiber_product(pi12, xi.theta1);
  FiberProduct right = fiber_product(xi.theta2, pi12p);
  FiberProduct outer = fiber_product(left.theta2, right.theta1);

  std::vector<OutcomeLabel> map;
  map.reserve(big.product.size());
  for (const auto& w : big.product.outcomes()) {
    const OutcomeLabel& w2 = w.component(0);
    const OutcomeLabel& w2p = w.component(1);
    OutcomeLabel mid = OutcomeLabel::pair(pi12(w2), pi12p(w2p));
    map.push_back(OutcomeLabel::pair(OutcomeLabel::pair(w2, mid),
                                     OutcomeLabel::pair(mid, w2p)));
  }
  return ZipUp{std::move(zip),
               SchemeIso(big.product, outer.product, std::move(map))};
}

// Rebracketing O1 x_G0 (O2 x_G1 O3) -> (O1 x_G0 O2) x_G1 O3 for the bundle
// shape O1 -> G0 <- O2 -> G1 <- O3.
inline SchemeIso assoc_rebracket(const Bundle& alpha1, const Bundle& alpha2,
                                 const Bundle& beta2, const Bundle& beta3) {
  require(alpha1.base() == alpha2.base(), errc::shape_mismatch,
          "alpha bundles do not share a base");
  require(alpha2.total() == beta2.total(), errc::shape_mismatch,
          "middle scheme mismatch between alpha2 and beta2");
  require(beta2.base() == beta3.base(), errc::shape_mismatch,
          "beta bundles do not share a base");
  FiberProduct inner_right = fiber_product(beta2, beta3);
  FiberProduct lhs =
      fiber_product(alpha1, compose(alpha2, inner_right.theta1));
  FiberProduct inner_left = fiber_product(alpha1, alpha2);
  FiberProduct rhs =
      fiber_product(compose(beta2, inner_left.theta2), beta3);

  std::vector<OutcomeLabel> map;
  map.reserve(lhs.product.size());
  for (const auto& w : lhs.product.outcomes()) {
    const OutcomeLabel& w1 = w.component(0);
    const OutcomeLabel& w2 = w.component(1).component(0);
    const OutcomeLabel& w3 = w.component(1).component(1);
    map.push_back(
        OutcomeLabel::pair(OutcomeLabel::pair(w1, w2), w3));
  }
  return SchemeIso(lhs.product, rhs.product, std::move(map));
}

struct MarkovCheck {
  bool is_markov = false;
  std::size_t first_failing_index = 0;  // least failing i (1-based), 0 if none
  std::optional<IsoFailure> witness;
  explicit operator bool() const { return is_markov; }
};

// Stepwise fiber-product criterion: for each i, the joint scheme of the
// first i variables must be isomorphic to the fiber product of the prefix
// scheme and the adjacent-pair scheme over [X_{i-1}].
inline MarkovCheck markov_verify(std::span<const RandomFunction> xs) {
  require(xs.size() >= 2, errc::too_short, "a chain needs at least two variables");
  for (std::size_t i = 1; i < xs.size(); ++i)
    require_same_domain(xs[0].domain(), xs[i].domain());
  for (std::size_t i = 2; i <= xs.size(); ++i) {
    std::vector<RandomFunction> prefix(xs.begin(), xs.begin() + (i - 1));
    DistributionScheme dprefix = distribution_scheme(joint(prefix));
    std::vector<RandomFunction> full(xs.begin(), xs.begin() + i);
    DistributionScheme dfull = distribution_scheme(joint(full));
    DistributionScheme dprev = distribution_scheme(xs[i - 2]);
    DistributionScheme dpair = distribution_scheme(joint({xs[i - 2], xs[i - 1]}));

    // prefix -> [X_{i-1}] drops everything but the last coordinate.
    RandomFunction last_coord =
        i == 2 ? RandomFunction(dprefix.scheme, dprefix.scheme.outcomes())
               : coordinate_function(dprefix.scheme, i - 2);
    Bundle pi_prefix = Bundle::make(dprefix.scheme, dprev.scheme, last_coord);
    Bundle pi_pair = Bundle::make(dpair.scheme, dprev.scheme,
                                  coordinate_function(dpair.scheme, 0));
    FiberProduct fp = fiber_product(pi_prefix, pi_pair);

    std::vector<OutcomeLabel> map;
    map.reserve(dfull.scheme.size());
    for (const auto& w : dfull.scheme.outcomes()) {
      OutcomeLabel prefix_part =
          i == 2 ? w.component(0)
                 : OutcomeLabel::tuple(std::vector<OutcomeLabel>(
                       w.parts().begin(), w.parts().begin() + (i - 1)));
      OutcomeLabel pair_part =
          OutcomeLabel::pair(w.component(i - 2), w.component(i - 1));
      map.push_back(OutcomeLabel::pair(std::move(prefix_part), std::move(pair_part)));
    }
    IsoReport rep =
        check_scheme_iso(SchemeIso(dfull.scheme, fp.product, std::move(map)));
    if (!rep.valid) return MarkovCheck{false, i, rep.failure};
  }
  return MarkovCheck{true, 0, {}};
}

inline MarkovCheck markov_verify(const std::vector<RandomFunction>& xs) {
  return markov_verify(std::span<const RandomFunction>(xs));
}

namespace detail {

inline void require_pair_labels(const Scheme& s) {
  for (const auto& w : s.outcomes())
    require(w.is_tuple() && w.parts().size() == 2, errc::shape_mismatch,
            "pair scheme outcome '" + w.str() + "' is not a 2-tuple");
}

inline std::map<OutcomeLabel, Rational> marginal(const Scheme& pairs,
                                                 std::size_t coord) {
  std::map<OutcomeLabel, Rational> m;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [it, fresh] =
        m.try_emplace(pairs.outcome(i).component(coord), pairs.mass_at(i));
    if (!fresh) it->second += pairs.mass_at(i);
  }
  return m;
}

}  // namespace detail

// Glues adjacent-pair schemes into the path scheme of the chain they
// determine: mass of <s1,...,sn> is pr(s1,s2) times the product of the
// conditional steps pr(si,si+1)/pr(si). Consecutive pair schemes must agree
// on the shared one-variable marginal exactly.
inline Scheme markov_build(std::span<const Scheme> pair_schemes) {
  require(!pair_schemes.empty(), errc::empty_sequence, "no pair schemes given");
  for (const auto& s : pair_schemes) detail::require_pair_labels(s);
  for (std::size_t k = 0; k + 1 < pair_schemes.size(); ++k) {
    auto second = detail::marginal(pair_schemes[k], 1);
    auto first = detail::marginal(pair_schemes[k + 1], 0);
    require(second == first, errc::marginal_mismatch,
            "pair schemes " + std::to_string(k + 1) + " and " +
                std::to_string(k + 2) + " disagree on the shared marginal");
  }
  if (pair_schemes.size() == 1) return pair_schemes[0];

  std::vector<std::pair<std::vector<OutcomeLabel>, Rational>> paths;
  for (std::size_t i = 0; i < pair_schemes[0].size(); ++i) {
    const auto& w = pair_schemes[0].outcome(i);
    paths.push_back({{w.component(0), w.component(1)}, pair_schemes[0].mass_at(i)});
  }
  for (std::size_t k = 1; k < pair_schemes.size(); ++k) {
    auto start_mass = detail::marginal(pair_schemes[k], 0);
    std::vector<std::pair<std::vector<OutcomeLabel>, Rational>> extended;
    for (const auto& [path, mass] : paths) {
      const OutcomeLabel& tail = path.back();
      for (std::size_t i = 0; i < pair_schemes[k].size(); ++i) {
        const auto& w = pair_schemes[k].outcome(i);
        if (w.component(0) != tail) continue;
        std::vector<OutcomeLabel> longer = path;
        longer.push_back(w.component(1));
        extended.push_back({std::move(longer),
                            mass * pair_schemes[k].mass_at(i) / start_mass.at(tail)});
      }
    }
    paths = std::move(extended);
  }
  std::vector<OutcomeLabel> labels;
  std::vector<Rational> masses;
  labels.reserve(paths.size());
  masses.reserve(paths.size());
  for (auto& [path, mass] : paths) {
    labels.push_back(OutcomeLabel::tuple(std::move(path)));
    masses.push_back(std::move(mass));
  }
  return Scheme::make(std::move(labels), std::move(masses));
}

inline Scheme markov_build(const std::vector<Scheme>& pair_schemes) {
  return markov_build(std::span<const Scheme>(pair_schemes));
}

// Coordinate functions of a scheme whose outcomes are equal-arity tuples;
// the chain variables of a path scheme.
inline std::vector<RandomFunction> path_coordinates(const Scheme& s) {
  require(s.outcome(0).is_tuple(), errc::shape_mismatch,
          "outcomes carry no coordinates");
  std::size_t arity = s.outcome(0).parts().size();
  for (const auto& w : s.outcomes())
    require(w.is_tuple() && w.parts().size() == arity, errc::shape_mismatch,
            "outcomes are not tuples of one arity");
  std::vector<RandomFunction> out;
  out.reserve(arity);
  for (std::size_t k = 0; k < arity; ++k) out.push_back(coordinate_function(s, k));
  return out;
}

}  // namespace prob
