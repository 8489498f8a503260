#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace probtest;

namespace {

Partition halves(const Scheme& die) {
  return Partition::make(die, {{L("1"), L("2"), L("3")}, {L("4"), L("5"), L("6")}});
}

RandomVariable face_square(const Scheme& die) {
  return rv_of(die, [](const OutcomeLabel& w) {
    long long v = std::stoll(w.text());
    return Rational(v * v);
  });
}

}  // namespace

TEST_CASE("conditional expectation: worked die example") {
  Scheme die = omega(6);
  RandomVariable x = face_square(die);
  RandomVariable ce = cond_expectation(x, halves(die));
  CHECK(ce(L("1")) == Rational(14, 3));
  CHECK(ce(L("2")) == Rational(14, 3));
  CHECK(ce(L("3")) == Rational(14, 3));
  CHECK(ce(L("4")) == Rational(77, 3));
  CHECK(ce(L("6")) == Rational(77, 3));
  CHECK(algebra_contains(halves(die), ce));

  CHECK(cond_expectation(x, Partition::discrete(die)) == x);
  CHECK(cond_expectation(x, Partition::single_block(die)) ==
        RandomVariable::constant(die, expectation(x)));
}

TEST_CASE("conditioning on several functions goes through the joint partition") {
  Scheme die = omega(6);
  RandomFunction parity = RandomFunction::from_function(die, [](const OutcomeLabel& w) {
    return std::stoi(w.text()) % 2 == 1 ? L("odd") : L("even");
  });
  RandomFunction half = RandomFunction::from_function(die, [](const OutcomeLabel& w) {
    return std::stoi(w.text()) <= 3 ? L("low") : L("high");
  });
  Partition joint_levels = partition_from_functions(die, {parity, half});
  CHECK(joint_levels ==
        Partition::make(die, {{L("1"), L("3")}, {L("2")}, {L("5")}, {L("4"), L("6")}}));
  RandomVariable ce = cond_expectation(face_value(die), joint_levels);
  CHECK(ce.values() == std::vector<Rational>{2, 2, 2, 5, 5, 5});
}

TEST_CASE("conditional probability") {
  Scheme die = omega(6);
  Event a(die, {L("1"), L("2"), L("3")});
  Event b(die, {L("1"), L("3"), L("5")});
  CHECK(cond_probability(a, a) == Rational(1));
  CHECK(cond_probability(Event(die, {L("5")}), a) == Rational(0));
  CHECK(cond_probability(b, a) == Rational(2, 3));
  CHECK_THROWS_WITH_AS(cond_probability(a, Event::empty(die)),
                       doctest::Contains("EmptyConditioningEvent"), Error);
  CHECK_THROWS_WITH_AS(cond_probability(a, Event::full(omega(2))),
                       doctest::Contains("DomainMismatch"), Error);
}

TEST_CASE("conditional covariance and variance") {
  Scheme die = omega(6);
  RandomVariable odd = indicator(Event(die, {L("1"), L("3"), L("5")}));

  RandomVariable v = cond_covariance(odd, odd, Partition::single_block(die));
  CHECK(v == RandomVariable::constant(die, Rational(1, 4)));

  RandomVariable x = face_value(die);
  CHECK(cond_covariance(x, x, Partition::discrete(die)) ==
        RandomVariable::constant(die, 0));

  CHECK(cond_variance(RandomVariable::constant(die, 9), halves(die)) ==
        RandomVariable::constant(die, 0));
  CHECK(cond_variance(x, Partition::single_block(die)) ==
        RandomVariable::constant(die, Rational(35, 12)));

  RandomVariable vsq = cond_variance(face_square(die), halves(die));
  CHECK(vsq(L("2")) == Rational(98, 9));
  CHECK(vsq(L("5")) == Rational(602, 9));
}

TEST_CASE("law of total expectation as a check") {
  Scheme die = omega(6);
  RandomVariable y = face_square(die);
  RandomFunction constant = RandomFunction::from_function(
      die, [](const OutcomeLabel&) { return L("c"); });
  CHECK(check_total_expectation(y, constant));

  RandomFunction parity = RandomFunction::from_function(die, [](const OutcomeLabel& w) {
    return std::stoi(w.text()) % 2 == 1 ? L("odd") : L("even");
  });
  CHECK(check_total_expectation(y, parity));
  // the two sides of the worked instance, by hand: conditioning on parity
  // gives fiber means 35/3 and 56/3, on the halves 14/3 and 77/3
  CHECK(expectation(y) == Rational(91, 6));
  CHECK(Rational(91, 6) ==
        Rational(35, 3) * Rational(1, 2) + Rational(56, 3) * Rational(1, 2));
  CHECK(Rational(91, 6) ==
        Rational(14, 3) * Rational(1, 2) + Rational(77, 3) * Rational(1, 2));
  RandomFunction which_half = RandomFunction::from_function(
      die, [](const OutcomeLabel& w) {
        return std::stoi(w.text()) <= 3 ? L("low") : L("high");
      });
  CHECK(check_total_expectation(y, which_half));

  CHECK_THROWS_WITH_AS(
      check_total_expectation(RandomVariable::constant(omega(2), 1), parity),
      doctest::Contains("DomainMismatch"), Error);
}

TEST_CASE("law of total probability instance") {
  Scheme die = omega(6);
  Event b(die, {L("1"), L("3"), L("5")});
  Partition p = halves(die);
  // sum of Pr(B|A_i) Pr(A_i) over the partition equals Pr(B)
  Rational total = 0;
  for (const auto& block : p.blocks()) {
    Event a(die, block);
    total += cond_probability(b, a) * probability(a);
  }
  CHECK(total == probability(b));
  CHECK(check_total_expectation(indicator(b),
                                to_random_function(indicator(Event(
                                    die, {L("1"), L("2"), L("3")})))));
}

TEST_CASE("LOTUS") {
  Scheme die = omega(6);
  RandomVariable x = face_value(die);
  std::map<Rational, Rational> identity, square, constant;
  for (int v = 1; v <= 6; ++v) {
    identity[Rational(v)] = Rational(v);
    square[Rational(v)] = Rational(v) * Rational(v);
    constant[Rational(v)] = Rational(4, 7);
  }
  CHECK(lotus(identity, x) == expectation(x));
  CHECK(lotus(square, x) == Rational(91, 6));
  CHECK(lotus(square, x) == expectation(x * x));
  CHECK(lotus(constant, x) == Rational(4, 7));

  std::map<Rational, Rational> partial = {{Rational(1), Rational(1)}};
  CHECK_THROWS_WITH_AS(lotus(partial, x), doctest::Contains("IncompleteTable"),
                       Error);
}

TEST_CASE("law of total covariance: worked instance") {
  Scheme die = omega(6);
  RandomVariable x = face_value(die);
  Partition fine = halves(die);
  Partition coarse = Partition::single_block(die);

  auto dec = total_covariance_decomposition(x, x, fine, coarse);
  CHECK(dec.lhs == dec.rhs_sum);
  CHECK(dec.lhs == RandomVariable::constant(die, Rational(35, 12)));
  // E var_fine = 2/3, var of fiber means = 9/4
  CHECK(expectation(cond_variance(x, fine)) == Rational(2, 3));
  CHECK(variance(cond_expectation(x, fine)) == Rational(9, 4));

  auto same = total_covariance_decomposition(x, x, fine, fine);
  CHECK(same.lhs == same.rhs_sum);

  auto constant = total_covariance_decomposition(
      RandomVariable::constant(die, 3), RandomVariable::constant(die, 5), fine,
      coarse);
  CHECK(constant.lhs == RandomVariable::constant(die, 0));
  CHECK(constant.rhs_sum == RandomVariable::constant(die, 0));

  CHECK_THROWS_WITH_AS(total_covariance_decomposition(x, x, coarse, fine),
                       doctest::Contains("NotARefinement"), Error);
}

TEST_CASE("conditioning across domains is rejected") {
  Scheme die = omega(6);
  Scheme coin = uniform_scheme({L("0"), L("1")});
  Partition p = Partition::single_block(coin);
  CHECK_THROWS_WITH_AS(cond_expectation(face_value(die), p),
                       doctest::Contains("DomainMismatch"), Error);
  CHECK_THROWS_WITH_AS(
      total_covariance_decomposition(face_value(die), face_value(die),
                                     Partition::discrete(coin), p),
      doctest::Contains("DomainMismatch"), Error);
}

TEST_CASE("components of variance") {
  Scheme die = omega(6);
  RandomVariable x = face_value(die);
  Partition p = halves(die);

  auto vc = variance_components(x, p);
  CHECK(vc.tss == Rational(35, 2));
  CHECK(vc.wss == Rational(4));
  CHECK(vc.bss_scaled == Rational(27, 2));
  CHECK(vc.tss == vc.wss + vc.bss_scaled);

  auto zero = variance_components(RandomVariable::constant(die, 2), p);
  CHECK(zero.tss == Rational(0));
  CHECK(zero.wss == Rational(0));
  CHECK(zero.bss_scaled == Rational(0));

  auto singletons = variance_components(x, Partition::discrete(die));
  CHECK(singletons.wss == Rational(0));
  CHECK(singletons.tss == singletons.bss_scaled);

  Partition unequal =
      Partition::make(die, {{L("1"), L("2")}, {L("3"), L("4"), L("5"), L("6")}});
  CHECK_THROWS_WITH_AS(variance_components(x, unequal),
                       doctest::Contains("UnequalBlockSizes"), Error);

  Scheme biased = make_scheme({L("a"), L("b")}, {Rational(1, 3), Rational(2, 3)});
  CHECK_THROWS_WITH_AS(
      variance_components(RandomVariable::constant(biased, 1),
                          Partition::discrete(biased)),
      doctest::Contains("NonUniformScheme"), Error);
}

TEST_CASE("property: conditional expectation is an orthogonal projection") {
  Gen gen(1011);
  for (int t = 0; t < 200; ++t) {
    Scheme s = gen.scheme();
    Partition p = gen.partition_on(s);
    RandomVariable x = gen.rv_on(s);
    RandomVariable y = gen.rv_on(s);
    RandomVariable px = cond_expectation(x, p);

    CHECK(px == oracle::block_means(x, p));
    // orthogonality of the residual to the algebra
    RandomVariable member = cond_expectation(y, p);
    CHECK(inner_product(x - px, member) == Rational(0));
    // idempotence and self-adjointness
    CHECK(cond_expectation(px, p) == px);
    CHECK(inner_product(px, y) == inner_product(x, cond_expectation(y, p)));
  }
}

TEST_CASE("property: relative linearity, tower law, and total variance") {
  Gen gen(1012);
  for (int t = 0; t < 200; ++t) {
    Scheme s = gen.scheme(8, 2);
    auto [fine, coarse] = gen.refinement_pair_on(s);
    RandomVariable x = gen.rv_on(s);

    // A-linearity with a random algebra member
    Bundle bf = partition_to_bundle(fine);
    RandomVariable member = pullback(bf, gen.rv_on(bf.base()));
    CHECK(cond_expectation(member * x, fine) == member * cond_expectation(x, fine));
    CHECK(cond_expectation(member, fine) == member);

    // tower law
    CHECK(cond_expectation(cond_expectation(x, fine), coarse) ==
          cond_expectation(x, coarse));

    // E' E = E through the quotient bundle
    CHECK(expectation(fiber_average(bf, x)) == expectation(x));

    // law of total variance at B = R
    CHECK(variance(x) == expectation(cond_variance(x, fine)) +
                             variance(cond_expectation(x, fine)));

    // law of total covariance across the refinement pair
    RandomVariable y = gen.rv_on(s);
    auto dec = total_covariance_decomposition(x, y, fine, coarse);
    CHECK(dec.lhs == dec.rhs_sum);
  }
}

TEST_CASE("property: components of variance on uniform groupings") {
  Gen gen(1013);
  for (int t = 0; t < 100; ++t) {
    int m = gen.int_in(1, 4);
    int n = gen.int_in(1, 3);
    Scheme s = omega(n * m);
    std::vector<std::vector<OutcomeLabel>> blocks(m);
    for (int i = 0; i < n * m; ++i)
      blocks[i % m].push_back(L(std::to_string(i + 1)));
    Partition p = Partition::make(s, std::move(blocks));
    RandomVariable x = gen.rv_on(s);
    auto vc = variance_components(x, p);
    CHECK(vc.tss == vc.wss + vc.bss_scaled);
    // tss is |Omega| times the variance
    CHECK(vc.tss == Rational(n * m) * variance(x));
  }
}
