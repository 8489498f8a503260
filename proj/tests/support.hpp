#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prob/prob.hpp"

// Deterministic generators for property tests. Each test constructs its own
// Gen with a fixed seed so test order never matters.
namespace probtest {

using namespace prob;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : g_(seed) {}

  int int_in(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g_);
  }

  // Values for random variables: numerators in [-6,6], denominators in [1,4].
  Rational small_rational() {
    return Rational(int_in(-6, 6), int_in(1, 4));
  }

  // Masses as normalized random small-denominator rationals: integer weights
  // in [1,9] divided by their total.
  std::vector<Rational> masses(std::size_t n) {
    std::vector<long long> w(n);
    long long total = 0;
    for (auto& x : w) {
      x = int_in(1, 9);
      total += x;
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (long long x : w) out.emplace_back(x, total);
    return out;
  }

  Scheme scheme(int max_outcomes = 8, int min_outcomes = 1) {
    int n = int_in(min_outcomes, max_outcomes);
    std::vector<OutcomeLabel> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i)
      labels.push_back(OutcomeLabel::atom(std::string(1, char('a' + i))));
    return Scheme::make(std::move(labels), masses(n));
  }

  RandomVariable rv_on(const Scheme& s) {
    std::vector<Rational> vals;
    vals.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) vals.push_back(small_rational());
    return RandomVariable(s, std::move(vals));
  }

  // Random surjection onto k classes; classes are forced non-empty by
  // pinning the first k outcomes.
  RandomFunction surjection_on(const Scheme& s, int k) {
    std::vector<OutcomeLabel> vals(s.size(), OutcomeLabel::atom("c0"));
    for (std::size_t i = 0; i < s.size(); ++i) {
      int c = i < static_cast<std::size_t>(k) ? static_cast<int>(i)
                                              : int_in(0, k - 1);
      vals[i] = OutcomeLabel::atom("c" + std::to_string(c));
    }
    return RandomFunction(s, std::move(vals));
  }

  RandomFunction rf_on(const Scheme& s, int max_values = 3) {
    int k = int_in(1, std::min<int>(max_values, static_cast<int>(s.size())));
    return surjection_on(s, k);
  }

  Bundle bundle_on(const Scheme& s) {
    int k = int_in(1, static_cast<int>(s.size()));
    return Bundle::induced(s, surjection_on(s, k).values());
  }

  Partition partition_on(const Scheme& s) {
    return bundle_to_partition(bundle_on(s));
  }

  // A pair (fine, coarse) with fine refining coarse: coarse merges fine
  // blocks through a second random surjection.
  std::pair<Partition, Partition> refinement_pair_on(const Scheme& s) {
    Partition fine = partition_on(s);
    int k = int_in(1, static_cast<int>(fine.block_count()));
    std::vector<int> group(fine.block_count());
    for (std::size_t b = 0; b < group.size(); ++b)
      group[b] = b < static_cast<std::size_t>(k) ? static_cast<int>(b)
                                                 : int_in(0, k - 1);
    std::vector<std::vector<OutcomeLabel>> blocks(k);
    for (std::size_t b = 0; b < fine.block_count(); ++b)
      for (const auto& w : fine.blocks()[b]) blocks[group[b]].push_back(w);
    std::vector<std::vector<OutcomeLabel>> nonempty;
    for (auto& blk : blocks)
      if (!blk.empty()) nonempty.push_back(std::move(blk));
    return {fine, Partition::make(s, std::move(nonempty))};
  }

  // A bundle over the given base: every base point expands into 1..max_fiber
  // total outcomes with its mass split by random weights.
  Bundle bundle_over(const Scheme& base, const std::string& prefix,
                     int max_fiber = 3) {
    std::vector<OutcomeLabel> labels;
    std::vector<Rational> total_masses;
    std::map<OutcomeLabel, OutcomeLabel> down;
    for (std::size_t j = 0; j < base.size(); ++j) {
      int parts = int_in(1, max_fiber);
      std::vector<Rational> split = masses(parts);
      for (int t = 0; t < parts; ++t) {
        OutcomeLabel w = OutcomeLabel::atom(prefix + std::to_string(j) + "_" +
                                            std::to_string(t));
        labels.push_back(w);
        total_masses.push_back(base.mass_at(j) * split[t]);
        down.emplace(w, base.outcome(j));
      }
    }
    Scheme total = Scheme::make(std::move(labels), std::move(total_masses));
    return Bundle::make(std::move(total), base, down);
  }

  // Consistent adjacent-pair schemes for a chain with `steps` transitions on
  // `states` states: a random initial pair, then conditional extensions that
  // match marginals exactly.
  std::vector<Scheme> chain_pairs(int states, int steps) {
    std::vector<OutcomeLabel> st;
    for (int i = 0; i < states; ++i)
      st.push_back(OutcomeLabel::atom("s" + std::to_string(i)));
    std::vector<Scheme> out;
    std::vector<OutcomeLabel> labels;
    for (int a = 0; a < states; ++a)
      for (int b = 0; b < states; ++b)
        labels.push_back(OutcomeLabel::pair(st[a], st[b]));
    out.push_back(Scheme::make(labels, masses(labels.size())));
    for (int k = 1; k < steps; ++k) {
      const Scheme& prev = out.back();
      std::map<OutcomeLabel, Rational> marg;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        auto [it, fresh] =
            marg.try_emplace(prev.outcome(i).component(1), prev.mass_at(i));
        if (!fresh) it->second += prev.mass_at(i);
      }
      std::vector<OutcomeLabel> next_labels;
      std::vector<Rational> next_masses;
      for (const auto& [s, m] : marg) {
        std::vector<Rational> split = masses(states);
        for (int b = 0; b < states; ++b) {
          next_labels.push_back(OutcomeLabel::pair(s, st[b]));
          next_masses.push_back(m * split[b]);
        }
      }
      out.push_back(Scheme::make(std::move(next_labels), std::move(next_masses)));
    }
    return out;
  }

  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

inline Scheme omega(int n) { return uniform_range_scheme(n); }

inline OutcomeLabel L(const std::string& s) { return OutcomeLabel::atom(s); }

inline RandomVariable rv_of(const Scheme& s,
                            const std::function<Rational(const OutcomeLabel&)>& f) {
  return RandomVariable::from_function(s, f);
}

// X(w) = numeric value of the outcome label, for uniform_range schemes.
inline RandomVariable face_value(const Scheme& s) {
  return rv_of(s, [](const OutcomeLabel& w) {
    return Rational(std::stoll(w.text()));
  });
}

inline RandomFunction identity_function(const Scheme& s) {
  return RandomFunction(s, s.outcomes());
}

}  // namespace probtest
