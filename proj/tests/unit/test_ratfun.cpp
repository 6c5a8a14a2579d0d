#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/check.hpp"
#include "../support/gen.hpp"
#include "valx/ratfun.hpp"

using namespace valx;
using valx::testing::Rng;
using valx::testing::uniform;

namespace {

long mod(long a, long p) { return ((a % p) + p) % p; }

MPoly random_mpoly(Rng& rng, unsigned long p, std::size_t n, int max_terms = 3, int max_exp = 2) {
  std::vector<MPoly::Term> terms;
  const long k = uniform(rng, 1, max_terms);
  for (long i = 0; i < k; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) m.e[v] = static_cast<std::int32_t>(uniform(rng, 0, max_exp));
    terms.push_back({m, Coef(p, uniform(rng, -5, 5))});
  }
  MPoly out = MPoly::from_terms(p, n, terms);
  return out.is_zero() ? MPoly::constant(p, n, Coef::one(p)) : out;
}

RatFun random_ratfun(Rng& rng, unsigned long p, std::size_t n) {
  return RatFun(random_mpoly(rng, p, n), random_mpoly(rng, p, n));
}

bool divides(const MPoly& d, const MPoly& a) {
  try {
    (void)a.exact_div(d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

TEST_CASE("F_p coefficients agree with integer arithmetic mod p") {
  Rng rng(21);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 101ul}) {
    const long lp = static_cast<long>(p);
    for (int i = 0; i < 300; ++i) {
      long a = uniform(rng, -1000, 1000), b = uniform(rng, -1000, 1000);
      Coef ca(p, a), cb(p, b);
      CHECK((ca + cb).to_rat() == mod(a + b, lp));
      CHECK((ca - cb).to_rat() == mod(a - b, lp));
      CHECK((ca * cb).to_rat() == mod(a * b, lp));
      if (mod(b, lp)) CHECK((cb * cb.inverse()).is_one());
    }
    CHECK_KIND(Coef::zero(p).inverse(), ErrorKind::DivisionByZero);
  }
  CHECK(Coef(3, Rat(1, 2)).to_rat() == 2);
  CHECK_KIND(Coef(3, Rat(1, 3)), ErrorKind::DivisionByZero);
}

TEST_CASE("rational coefficients") {
  Coef a(0, Rat(2, 3)), b(0, Rat(-1, 4));
  CHECK((a * b).to_rat() == Rat(-1, 6));
  CHECK((a / b).to_rat() == Rat(-8, 3));
  CHECK(a.to_string() == "2/3");
}

TEST_CASE("polynomial ring laws") {
  Rng rng(22);
  for (unsigned long p : {0ul, 3ul})
    for (int i = 0; i < 150; ++i) {
      MPoly a = random_mpoly(rng, p, 2), b = random_mpoly(rng, p, 2), c = random_mpoly(rng, p, 2);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      CHECK((a * b).exact_div(b) == a);
    }
}

TEST_CASE("exact division refuses inexact quotients") {
  MPoly t = MPoly::variable(0, 1, 0);
  MPoly one = MPoly::constant(0, 1, Coef::one(0));
  CHECK_KIND((t + one).exact_div(t), ErrorKind::InvariantBreach);
}

TEST_CASE("gcd is a common divisor containing every planted factor") {
  Rng rng(23);
  for (unsigned long p : {0ul, 3ul, 5ul})
    for (std::size_t n : {1ul, 2ul})
      for (int i = 0; i < 60; ++i) {
        MPoly c = random_mpoly(rng, p, n), u = random_mpoly(rng, p, n), v = random_mpoly(rng, p, n);
        MPoly a = c * u, b = c * v;
        MPoly g = gcd(a, b);
        CHECK(divides(g, a));
        CHECK(divides(g, b));
        CHECK(divides(c, g));
      }
}

TEST_CASE("rational functions form a field") {
  Rng rng(24);
  for (unsigned long p : {0ul, 3ul})
    for (int i = 0; i < 150; ++i) {
      RatFun a = random_ratfun(rng, p, 2), b = random_ratfun(rng, p, 2), c = random_ratfun(rng, p, 2);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) - b == a);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  CHECK_KIND(RatFun::zero(3, 1).inverse(), ErrorKind::DivisionByZero);
}

TEST_CASE("lowest terms are canonical") {
  MPoly t = MPoly::variable(3, 1, 0);
  MPoly one = MPoly::constant(3, 1, Coef::one(3));
  RatFun r((t * t - one), (t - one).scaled(Coef(3, 2L)));
  CHECK(r.den().is_one());
  CHECK(r == RatFun((t + one).scaled(Coef(3, 2L))));
  CHECK(r.to_string({"t"}) == "2*t + 2");
  CHECK(RatFun(one, t).to_string({"t"}) == "1/t");
}

TEST_CASE("lex order puts the first variable first") {
  MPoly u = MPoly::variable(3, 2, 0), v = MPoly::variable(3, 2, 1);
  MPoly f = u + v * v * v;
  CHECK(f.lowest().first.e[1] == 3);
  CHECK(f.leading().first.e[0] == 1);
  CHECK(f.to_string({"u", "v"}) == "u + v^3");
}
