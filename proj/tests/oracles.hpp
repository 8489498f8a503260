#pragma once

#include <map>
#include <utility>
#include <vector>

#include "prob/prob.hpp"

// Independent oracles for the property suites. Each one recomputes its
// answer from raw sums over outcomes, never through the bundle machinery it
// is used to check.
namespace probtest::oracle {

using namespace prob;

// Per-block conditional mean by direct summation.
inline RandomVariable block_means(const RandomVariable& x, const Partition& p) {
  const Scheme& s = x.domain();
  std::vector<Rational> num(p.block_count(), Rational(0));
  std::vector<Rational> den(p.block_count(), Rational(0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    num[p.block_index_of(i)] += x.value_at(i) * s.mass_at(i);
    den[p.block_index_of(i)] += s.mass_at(i);
  }
  std::vector<Rational> vals(s.size(), Rational(0));
  for (std::size_t i = 0; i < s.size(); ++i)
    vals[i] = num[p.block_index_of(i)] / den[p.block_index_of(i)];
  return RandomVariable(s, std::move(vals));
}

// Normal equations for the affine fit, solved by Cramer's rule on raw sums.
inline std::pair<Rational, Rational> normal_equations(const RandomVariable& x,
                                                      const RandomVariable& y) {
  const Scheme& s = x.domain();
  Rational ex = 0, ey = 0, exx = 0, exy = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ex += x.value_at(i) * s.mass_at(i);
    ey += y.value_at(i) * s.mass_at(i);
    exx += x.value_at(i) * x.value_at(i) * s.mass_at(i);
    exy += x.value_at(i) * y.value_at(i) * s.mass_at(i);
  }
  Rational det = exx - ex * ex;
  return {(exy - ex * ey) / det, (exx * ey - ex * exy) / det};
}

// Conditional independence by cross-multiplied pmf comparison
// Pr(X,Y,Z) Pr(Z) = Pr(X,Z) Pr(Y,Z) over all value triples.
inline bool cond_indep(const RandomFunction& x, const RandomFunction& y,
                       const RandomFunction& z) {
  const Scheme& s = x.domain();
  std::map<std::vector<OutcomeLabel>, Rational> pxyz, pxz, pyz;
  std::map<OutcomeLabel, Rational> pz;
  auto add = [](auto& m, const auto& k, const Rational& v) {
    auto [it, fresh] = m.try_emplace(k, v);
    if (!fresh) it->second += v;
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    add(pxyz, std::vector<OutcomeLabel>{x.value_at(i), y.value_at(i), z.value_at(i)},
        s.mass_at(i));
    add(pxz, std::vector<OutcomeLabel>{x.value_at(i), z.value_at(i)}, s.mass_at(i));
    add(pyz, std::vector<OutcomeLabel>{y.value_at(i), z.value_at(i)}, s.mass_at(i));
    add(pz, z.value_at(i), s.mass_at(i));
  }
  auto mass = [](const auto& m, const auto& k) {
    auto it = m.find(k);
    return it == m.end() ? Rational(0) : it->second;
  };
  for (const auto& [xz, mxz] : pxz)
    for (const auto& [yz, myz] : pyz) {
      if (xz[1] != yz[1]) continue;
      Rational joint = mass(pxyz, std::vector<OutcomeLabel>{xz[0], yz[0], xz[1]});
      if (joint * pz.at(xz[1]) != mxz * myz) return false;
    }
  return true;
}

}  // namespace probtest::oracle
