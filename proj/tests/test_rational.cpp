#include <doctest.h>

#include "kwall/rational.hpp"

using namespace kwall;

TEST_CASE("rational literals") {
  CHECK(rat_from_string("3/4") == rat_q(3, 4));
  CHECK(rat_from_string("-3/4") == rat_q(-3, 4));
  CHECK(rat_from_string("6/8") == rat_q(3, 4));  // canonicalized
  CHECK(rat_from_string("42") == Rat(42));
  CHECK(rat_to_string(rat_q(-5, 7)) == "-5/7");
  CHECK(rat_to_string(rat_q(4, 2)) == "2");
  CHECK_THROWS_AS(rat_from_string("0.5"), Error);
  CHECK_THROWS_AS(rat_from_string("1/0"), Error);
  CHECK_THROWS_AS(rat_from_string(""), Error);
  CHECK_THROWS_AS(rat_from_string("2x"), Error);
}

TEST_CASE("integer square roots") {
  CHECK(isqrt_floor(Int(0)) == 0);
  CHECK(isqrt_floor(Int(15)) == 3);
  CHECK(isqrt_floor(Int(16)) == 4);
  CHECK(rat_sqrt_floor(Rat(2)) == 1);
  CHECK(rat_sqrt_floor(rat_q(9, 2)) == 2);   // sqrt(4.5)
  CHECK(rat_sqrt_floor(rat_q(81, 4)) == 4);  // sqrt(20.25)
}

TEST_CASE("sqrt values: signs and comparisons") {
  SqrtVal one_minus_sqrt2(Rat(1), Rat(-1), Int(2));
  CHECK(one_minus_sqrt2.sign() == -1);
  SqrtVal three_minus_2sqrt2(Rat(3), Rat(-2), Int(2));
  CHECK(three_minus_2sqrt2.sign() == 1);  // 3 > 2.828
  SqrtVal zero(Rat(2), Rat(-1), Int(4));  // 2 - sqrt(4) = 0
  CHECK(zero.sign() == 0);
  CHECK(zero.is_rational());

  // 4*sqrt(2) vs 3/sqrt(2) = (3/2)*sqrt(2): the exclusion engine's contradiction
  SqrtVal lhs(Rat(0), Rat(4), Int(2));
  SqrtVal rhs(Rat(0), rat_q(3, 2), Int(2));
  CHECK(sqrtval_cmp(lhs, rhs) > 0);

  // mixed radicands: sqrt(2) vs 63/20 - sqrt(3)  (1.41421 < 1.41795)
  SqrtVal a(Rat(0), Rat(1), Int(2));
  SqrtVal b(rat_q(63, 20), Rat(-1), Int(3));
  CHECK(sqrtval_cmp(a, b) < 0);
  CHECK(sqrtval_cmp(b, a) > 0);
  // and sqrt(2)+sqrt(3) vs 63/20 written across both radicands
  SqrtVal c(rat_q(-63, 20), Rat(1), Int(2));
  SqrtVal d(Rat(0), Rat(-1), Int(3));
  CHECK(sqrtval_cmp(c, d) < 0);  // sqrt(2)+sqrt(3) < 3.15
}

TEST_CASE("rational witnesses between algebraic endpoints") {
  SqrtVal sqrt2(Rat(0), Rat(1), Int(2));
  SqrtVal sqrt3(Rat(0), Rat(1), Int(3));
  Rat w = rational_between(sqrt2, sqrt3);
  CHECK(sqrtval_cmp(sqrt2, w) < 0);
  CHECK(sqrtval_cmp(sqrt3, w) > 0);
  CHECK(w == rat_q(3, 2));  // the simplest fraction in (1.414..., 1.732...)

  Rat v = rational_between(SqrtVal::from_rat(rat_q(1, 3)), SqrtVal::from_rat(rat_q(1, 2)));
  CHECK(v > rat_q(1, 3));
  CHECK(v < rat_q(1, 2));

  Rat t = rational_between(SqrtVal::from_rat(rat_q(999, 1000)), SqrtVal::from_rat(rat_q(1000, 1001)));
  CHECK(t > rat_q(999, 1000));
  CHECK(t < rat_q(1000, 1001));
}
