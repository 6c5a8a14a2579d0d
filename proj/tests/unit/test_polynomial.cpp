#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/check.hpp"
#include "../support/gen.hpp"

using namespace valx;
using valx::testing::random_element;
using valx::testing::random_poly;
using valx::testing::Rng;

namespace {

Workspace make(const std::string& text) {
  Workspace w;
  w.feed(text);
  return w;
}

const char* kCubic = "base padic 3\next a : x^3 - 1/3 @ -1/3\n";
const char* kTower = "base ratfun F3 t\next a1 : x^3 - x - 1/t @ -1/3\next a2 : x^2 - 1/t @ -1/2\n";

Poly random_monic(Rng& rng, const LevelPtr& l, int max_degree) {
  Poly g = random_poly(rng, l, max_degree);
  return g.monic();
}

}  // namespace

TEST_CASE("construction, printing and degree") {
  Workspace w = make(kCubic);
  Poly f = w.polynomial("x^3 - 1/3");
  CHECK(f.degree() == 3);
  CHECK(f.is_monic());
  CHECK(f.to_string() == "x^3 - 1/3");
  CHECK(Poly::zero(w.top()).degree() == -1);
  CHECK(Poly(w.top(), {FieldElement::one(w.top()), FieldElement::zero(w.top())}).degree() == 0);
  CHECK(Poly::linear(w.element("a")).to_string() == "x - a");
  CHECK((w.polynomial("x + 1").pow(3)) == w.polynomial("x^3 + 3*x^2 + 3*x + 1"));
  CHECK_KIND(f.pow(-1), ErrorKind::Unsupported);
}

TEST_CASE("division with remainder") {
  Rng rng(41);
  for (const char* text : {kCubic, kTower}) {
    Workspace w = make(text);
    for (int i = 0; i < 40; ++i) {
      Poly f = random_poly(rng, w.top(), 6), g = random_monic(rng, w.top(), 3);
      auto [q, r] = divmod(f, g);
      CHECK(q * g + r == f);
      CHECK(r.degree() < g.degree());
    }
  }
  Workspace w = make(kCubic);
  CHECK_KIND(divmod(w.polynomial("x^2"), w.polynomial("2*x + 1")), ErrorKind::NonMonicDivisor);
}

TEST_CASE("gcd recovers a planted common factor") {
  Workspace w = make(kCubic);
  Poly common = Poly::linear(w.element("a"));
  Poly f = common * w.polynomial("x^2 + 3"), g = common * w.polynomial("x - 5");
  CHECK(gcd(f, g) == common);
  CHECK(gcd(f, Poly::zero(w.top())) == f.monic());
  CHECK(gcd(w.polynomial("x^2 + 1"), w.polynomial("x")).degree() == 0);
}

TEST_CASE("separability") {
  Workspace w = make("base ratfun F3 t\n");
  CHECK_FALSE(is_separable(w.polynomial("x^3 - t")));
  CHECK(is_separable(w.polynomial("x^3 - x - 1/t")));
  CHECK_FALSE(is_separable(w.polynomial("(x - t)^2")));
}

TEST_CASE("derivative and deflation") {
  Workspace w = make("base ratfun F3 u v\n");
  Poly f = w.polynomial("x^9 + u*x^3 + v");
  CHECK(f.derivative().is_zero());
  CHECK(f.deflated(3) == w.polynomial("x^3 + u*x + v"));
  CHECK_KIND(w.polynomial("x^2 + x").deflated(2), ErrorKind::InvariantBreach);
  Workspace q = make("base padic 5\n");
  CHECK(q.polynomial("x^4 - 2*x").derivative() == q.polynomial("4*x^3 - 2"));
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(42);
  Workspace w = make(kTower);
  for (int i = 0; i < 30; ++i) {
    Poly f = random_poly(rng, w.top()->path().front(), 4), g = random_poly(rng, w.top()->path().front(), 4);
    FieldElement a = random_element(rng, w.top());
    CHECK((f * g).eval(a) == f.eval(a) * g.eval(a));
    CHECK((f + g).eval(a) == f.eval(a) + g.eval(a));
  }
}

TEST_CASE("Taylor expansion round-trips and reads off f(a) and f'(a)") {
  Rng rng(43);
  for (const char* text : {kCubic, kTower}) {
    Workspace w = make(text);
    for (int i = 0; i < 30; ++i) {
      Poly f = random_poly(rng, w.top()->path().front(), 7);
      FieldElement a = random_element(rng, w.top());
      std::vector<FieldElement> c = taylor_expand(f, a);
      CHECK(taylor_reconstruct(c, a) == f.lifted(w.top()));
      CHECK(c[0] == f.eval(a));
      if (c.size() > 1) CHECK(c[1] == f.derivative().eval(a));
    }
  }
}

TEST_CASE("Q-expansion round-trips with short digits") {
  Rng rng(44);
  Workspace w = make(kCubic);
  LevelPtr k = w.top()->path().front();
  Poly q = w.polynomial("x^3 - 1/3").lowered(k);
  for (int i = 0; i < 60; ++i) {
    Poly f = random_poly(rng, k, 12);
    std::vector<Poly> parts = q_expand(f, q);
    CHECK(q_reconstruct(parts, q) == f);
    for (const auto& p : parts) CHECK(p.degree() < q.degree());
  }
  CHECK(q_expand(Poly::zero(k), q).empty());
  CHECK_KIND(q_expand(q, q.scaled(FieldElement::rational(k, Rat(2)))), ErrorKind::NonMonicQ);
  CHECK_KIND(q_expand(q, Poly::constant(FieldElement::one(k))), ErrorKind::NonMonicQ);
}

TEST_CASE("minimal polynomials") {
  Workspace w = make(kTower);
  LevelPtr k = w.top()->path().front();
  // b = t*a1*a2 and c = b^2 = t*a1^2 satisfy c*(c - t)^2 = t, i.e.
  // c^3 + t*c^2 + t^2*c + 2*t = 0 in characteristic 3
  Poly m = minimal_polynomial(w.element("t*a1*a2"), k);
  CHECK(m.to_string() == "x^6 + t*x^4 + t^2*x^2 + 2*t");
  CHECK(minimal_polynomial(w.element("a2"), k).to_string() == "x^2 + 2/t");
  CHECK(minimal_polynomial(w.element("a1 + 1"), k).to_string() == "x^3 + 2*x + 2/t");
  CHECK(minimal_polynomial(w.element("t"), k).degree() == 1);
  CHECK(minimal_polynomial(w.element("a2"), w.top()->parent()).degree() == 2);
  CHECK(minimal_polynomial(w.element("a1*a2"), w.top()->parent()).degree() == 2);
  CHECK_KIND(minimal_polynomial(w.element("a1").lowered(w.top()->parent()), w.top()), ErrorKind::LevelMismatch);

  Rng rng(45);
  for (int i = 0; i < 25; ++i) {
    FieldElement e = random_element(rng, w.top());
    Poly p = minimal_polynomial(e, k);
    CHECK(p.is_monic());
    CHECK(w.top()->total_degree() % p.degree() == 0);
    CHECK(p.eval(e).is_zero());
  }
}
