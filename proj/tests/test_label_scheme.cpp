#include <doctest.h>

#include "support.hpp"

using namespace probtest;

TEST_CASE("label construction rules") {
  CHECK(L("H").is_atom());
  CHECK_THROWS_AS(OutcomeLabel::atom(""), Error);
  CHECK_THROWS_AS(OutcomeLabel::atom("a,b"), Error);
  CHECK_THROWS_AS(OutcomeLabel::atom("(x"), Error);
  CHECK_THROWS_AS(OutcomeLabel::tuple({L("a")}), Error);
  OutcomeLabel p = OutcomeLabel::pair(L("0"), L("1"));
  CHECK(p.is_tuple());
  CHECK(p.arity() == 2);
  CHECK(p.component(0) == L("0"));
}

TEST_CASE("label total order: atoms lexicographic, atom < tuple, tuples componentwise") {
  CHECK(L("a") < L("b"));
  CHECK(L("z") < OutcomeLabel::pair(L("a"), L("a")));
  CHECK(OutcomeLabel::pair(L("0"), L("1")) < OutcomeLabel::pair(L("1"), L("0")));
  CHECK(OutcomeLabel::pair(L("0"), L("0")) < OutcomeLabel::pair(L("0"), L("1")));
  // nested tuples compare structurally
  OutcomeLabel nested = OutcomeLabel::pair(OutcomeLabel::pair(L("a"), L("b")), L("c"));
  CHECK(nested == OutcomeLabel::parse("((a,b),c)"));
  CHECK(OutcomeLabel::parse("((a,a),z)") < nested);
  CHECK(OutcomeLabel::parse("(z,z)") < nested);  // atom component < tuple component
}

TEST_CASE("label text encoding round-trips") {
  for (const char* text : {"H", "42", "(0,1)", "((a,b),(c,d))", "(x,y,z)"}) {
    OutcomeLabel l = OutcomeLabel::parse(text);
    CHECK(l.str() == text);
    CHECK(OutcomeLabel::parse(l.str()) == l);
  }
  CHECK_THROWS_AS(OutcomeLabel::parse("(a)"), Error);
  CHECK_THROWS_AS(OutcomeLabel::parse("(a,b"), Error);
  CHECK_THROWS_AS(OutcomeLabel::parse("a)b"), Error);
  CHECK_THROWS_AS(OutcomeLabel::parse(""), Error);
}

TEST_CASE("make_scheme canonicalizes and validates") {
  Scheme coin = make_scheme({L("T"), L("H")}, {Rational(1, 2), Rational(1, 2)});
  CHECK(coin.size() == 2);
  CHECK(coin.outcome(0) == L("H"));  // sorted
  CHECK(coin.mass(L("T")) == Rational(1, 2));

  Scheme pt = make_scheme({L("a")}, {Rational(1)});
  CHECK(pt.size() == 1);
  CHECK(pt.mass_at(0) == Rational(1));

  CHECK_THROWS_WITH_AS(
      make_scheme({L("a"), L("b")}, {Rational(1, 3), Rational(1, 3)}),
      doctest::Contains("MassNotNormalized"), Error);
  CHECK_THROWS_WITH_AS(
      make_scheme({L("a"), L("a")}, {Rational(1, 2), Rational(1, 2)}),
      doctest::Contains("DuplicateLabel"), Error);
  CHECK_THROWS_WITH_AS(make_scheme({L("a"), L("b")}, {Rational(0), Rational(1)}),
                       doctest::Contains("NonPositiveMass"), Error);
  CHECK_THROWS_WITH_AS(make_scheme({L("a")}, {Rational(1), Rational(1)}),
                       doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("uniform schemes") {
  Scheme die = omega(6);
  CHECK(die.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(die.mass_at(i) == Rational(1, 6));

  Scheme one = uniform_scheme({L("x")});
  CHECK(one.mass_at(0) == Rational(1));

  Scheme bit = uniform_scheme({L("0"), L("1")});
  CHECK(bit.mass(L("0")) == Rational(1, 2));
  CHECK(bit.mass(L("1")) == Rational(1, 2));

  CHECK_THROWS_WITH_AS(uniform_scheme({}), doctest::Contains("EmptySupport"), Error);
  CHECK_THROWS_AS(uniform_scheme({L("a"), L("a")}), Error);
}

TEST_CASE("scheme equality is label-wise") {
  CHECK(omega(6) == omega(6));
  CHECK(omega(6) != omega(5));
  Scheme biased = make_scheme({L("1"), L("2")}, {Rational(1, 3), Rational(2, 3)});
  Scheme uniform2 = uniform_scheme({L("1"), L("2")});
  CHECK(biased != uniform2);
}

TEST_CASE("property: generated schemes are normalized and positive") {
  Gen gen(1002);
  for (int t = 0; t < 200; ++t) {
    Scheme s = gen.scheme();
    Rational total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s.mass_at(i) > 0);
      total += s.mass_at(i);
    }
    CHECK(total == Rational(1));
    for (std::size_t i = 1; i < s.size(); ++i)
      CHECK(s.outcome(i - 1) < s.outcome(i));
  }
}
