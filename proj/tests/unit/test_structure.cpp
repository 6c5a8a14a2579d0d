#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/check.hpp"
#include "../support/gen.hpp"

using namespace valx;

namespace {

Workspace make(const std::string& text) {
  Workspace w;
  w.feed(text);
  return w;
}

GroupValue q(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return GroupValue::scalar(r);
}

const char* kChainField = "base padic 3\nhenselian\next a : x^8 - 3 @ 1/8\n";

struct ChainFixture {
  Workspace w = make(kChainField);
  FieldElement a2 = w.element("1 + a^4");
  FieldElement a1 = w.element("9 + 9*a^2 + 1 + a^4");
  FieldElement a0 = w.element("3^5*(1 + a) + 9 + 9*a^2 + 1 + a^4");
  FieldElement zero = w.element("0");
  DistinguishedChain chain{{a0, a1, a2, zero}};
};

PairOfDefinition asserted(const FieldElement& a, GammaSpec spec, std::string name = "a") {
  return PairOfDefinition(a, std::move(spec), std::move(name), MinimalityCert::Asserted);
}

// 1 + #{conjugate differences d with d >= gamma}, strict when gamma is not rational
int j_oracle(const PairOfDefinition& pd) {
  int j = 1;
  for (const auto& d : conjugate_differences(pd.a).values) {
    auto c = pd.cmp(d, pd.gamma());
    if (c > 0 || (c == 0 && pd.spec.is_rational())) ++j;
  }
  return j;
}

}  // namespace

TEST_CASE("a verified chain") {
  ChainFixture f;
  CHECK(verify_chain(f.chain));
  CHECK(f.chain.deltas() == std::vector<GroupValue>{q(5), q(2), q(0)});
  DistinguishedChain partial{{f.a0, f.a1, f.a2}};
  CHECK_FALSE(verify_chain(partial));
}

TEST_CASE("chain failures") {
  ChainFixture f;
  CHECK_KIND(verify_chain(DistinguishedChain{{f.a1, f.a0, f.zero}}), ErrorKind::BrokenMonotonicity);
  // degrees 8, 2, 1 but both deltas are 0
  CHECK_KIND(verify_chain(DistinguishedChain{{f.w.element("a"), f.a2, f.zero}}), ErrorKind::BrokenMonotonicity);
  CHECK_KIND(verify_chain(DistinguishedChain{}), ErrorKind::BrokenMonotonicity);
  Workspace plain = make("base padic 3\next a : x^8 - 3 @ 1/8\n");
  CHECK_KIND(verify_chain(DistinguishedChain{{plain.element("a"), plain.element("0")}}),
             ErrorKind::NotHenselianContext);
}

TEST_CASE("minimal pair selection is the first delta below gamma") {
  ChainFixture f;
  auto index = [&](long n, long d) { return minimal_pair_index(f.chain, GammaSpec::rational({Rat(n, d)})); };
  CHECK(index(6, 1) == 0);
  CHECK(index(3, 1) == 1);
  CHECK(index(2, 1) == 2);
  CHECK(index(1, 2) == 2);
  CHECK(index(0, 1) == 3);
  CHECK(index(-1, 1) == 3);
  CHECK(minimal_pair_index(f.chain, GammaSpec::above_all(1)) == 0);
  PairOfDefinition pd = minimal_pair_from_chain(f.chain, GammaSpec::rational({Rat(3)}), {"a0", "a1", "a2", "0"});
  CHECK(pd.name == "a1");
  CHECK(pd.minimal == MinimalityCert::Chain);
  CHECK(pd.a == f.a1);
}

TEST_CASE("refutation search") {
  ChainFixture f;
  // 10 + a^4 has degree 2 and sits closer to a1 than a2 does
  FieldElement closer = f.w.element("10 + a^4");
  auto z = refute_chain_step(f.chain, 1, {f.a2, f.w.element("a"), closer});
  REQUIRE(z.has_value());
  CHECK(*z == closer);
  CHECK((f.a1 - closer).value() == q(9, 4));
  CHECK_FALSE(refute_chain_step(f.chain, 1, {f.a2}).has_value());
  CHECK_FALSE(refute_chain_step(f.chain, 7, {closer}).has_value());
}

TEST_CASE("j-count against conjugate differences") {
  for (const char* g : {"1/5", "1/6", "1/7", "-1/3"}) {
    Workspace w = make(std::string("base padic 3\next a : x^3 - 1/3 @ -1/3\ngamma rational ") + g + "\npair a\n");
    CHECK(j_count(w.pair()) == j_oracle(w.pair()));
  }
  for (const auto& tower : valx::testing::golden_towers()) {
    if (tower.name == "two-variable") continue;
    Workspace w = make(tower.text);
    CHECK(j_count(w.pair()) == j_oracle(w.pair()));
  }
  Workspace w = make("base padic 3\next a : x^3 - 1/3 @ -1/3\ngamma rational 1/6\npair a\n");
  CHECK(j_count(w.pair()) == 3);
  Workspace t = make(valx::testing::golden_towers()[2].text);
  CHECK(j_count(t.pair()) == 3);
  Workspace s = make("base ratfun F3 u v\next a : x^9 + u*x^3 + v @ (0,1/9)\ngamma rational (0,1)\npair a\n");
  CHECK_KIND(j_count(s.pair()), ErrorKind::Inseparable);
}

TEST_CASE("tame degree") {
  CHECK(tame_degree(6, 3) == 2);
  CHECK(tame_degree(9, 3) == 1);
  CHECK(tame_degree(12, 2) == 3);
  CHECK(tame_degree(10, 5) == 2);
  CHECK(tame_degree(5, 1) == 5);
  Workspace w = make(valx::testing::golden_towers()[2].text);
  CHECK(tame_degree(w.top()) == 2);
}

TEST_CASE("implicit constant field: golden verdicts") {
  const char* cubic = "base padic 3\next a : x^3 - 1/3 @ -1/3\n";
  Workspace k = make(std::string(cubic) + "gamma rational 53/300\npair a\n");
  ICReport r = ic_classify(k.pair());
  CHECK(to_string(r.verdict) == "Exact");
  CHECK(r.field == "K(a)^h");
  CHECK(r.rule == "krasner");
  CHECK(*r.j == 1);

  Workspace p = make(std::string(cubic) + "gamma rational 1/6\npair a\n");
  r = ic_classify(p.pair());
  CHECK(r.field == "K^h");
  CHECK(r.rule == "prime-degree");
  CHECK(r.upper == "K(a)^h");
  CHECK(r.disjunct_undecided);

  Workspace v = make(std::string(cubic) + "gamma quadirr 0 1/10 2\npair a\n");
  r = ic_classify(v.pair());
  CHECK(r.rule == "prime-degree");
  CHECK(*r.j == 3);
  CHECK_FALSE(r.disjunct_undecided);

  Workspace t = make(valx::testing::golden_towers()[2].text);
  r = ic_classify(t.pair());
  CHECK(r.field == "K(a2)^h");
  CHECK(r.degree == 2);
  CHECK(r.rule == "divisor-pinning");
  CHECK(r.upper == "K(a)^h");

  Workspace s = make(valx::testing::golden_towers()[3].text);
  r = ic_classify(s.pair());
  CHECK(r.field == "K(a^3)^h");
  CHECK(r.degree == 3);
  CHECK(r.rule == "krasner-separable-part");
  CHECK_FALSE(r.j.has_value());
}

TEST_CASE("implicit constant field: remaining rules") {
  Workspace w = make("base padic 3\next a : x^3 - 1/3 @ -1/3\n");
  CHECK(ic_classify(asserted(w.element("1/3"), GammaSpec::rational({Rat(1)}))).rule == "a-in-base");
  ICReport r = ic_classify(asserted(w.element("a"), GammaSpec::above_all(1)));
  CHECK(r.rule == "above-all");
  CHECK(r.field == "K(a)^h");
  CHECK_KIND(ic_classify(PairOfDefinition(w.element("a"), GammaSpec::rational({Rat(1)}))),
             ErrorKind::NotMinimalAsserted);

  Workspace i = make("base ratfun F3 t\next b : x^3 - t @ 1/3\n");
  CHECK(ic_classify(asserted(i.element("b"), GammaSpec::rational({Rat(1)}), "b")).rule == "purely-inseparable");

  Workspace s = make("base ratfun F3 u v\next a : x^9 + u*x^3 + v @ (0,1/9)\n");
  r = ic_classify(asserted(s.element("a"), GammaSpec::rational({Rat(0), Rat(0)})));
  CHECK(to_string(r.verdict) == "BoundsOnly");
  CHECK(r.lower == "K^h");
  CHECK(r.upper_degree == 9);
  CHECK(ic_classify(asserted(s.element("a"), GammaSpec::above_all(2))).field == "K(a^3)^h");

  // degree 9 over F3(t), gamma irrational below kras = 0: only K^h and K(b)^h are pinned
  Workspace n = make("base ratfun F3 t\next b : x^9 - x - 1/t @ -1/9\n");
  r = ic_classify(asserted(n.element("b"), GammaSpec::quadratic({Rat(0)}, Rat(-1, 20), Int(2)), "b"));
  CHECK(to_string(r.verdict) == "ProperWithJ");
  CHECK(*r.j == 9);
  CHECK(r.lower == "K^h");
  CHECK(r.upper == "K(b)^h");
}

TEST_CASE("invariants of the minimal fields") {
  Workspace w = make("base padic 3\next a : x^3 - 1/3 @ -1/3\ngamma rational 1/5\npair a\n");
  PairOfDefinition p = w.pair();
  CHECK(minimal_field_invariants_check(p, p));
  Workspace c = make("base padic 3\next b : x^2 - 3 @ 1/2\n");
  GammaSpec g = GammaSpec::rational({Rat(1)});
  PairOfDefinition b1(c.element("b"), g, "b", MinimalityCert::Asserted), b2(c.element("-b"), g, "-b", MinimalityCert::Asserted);
  CHECK(coincidence_test(b1, b2));
  CHECK(minimal_field_invariants_check(b1, b2));
  PairOfDefinition other(w.element("a"), GammaSpec::rational({Rat(1, 4)}), "a", MinimalityCert::ValueOrder);
  CHECK_KIND(minimal_field_invariants_check(p, other), ErrorKind::NotCoincident);
}

TEST_CASE("the selected pair defines the same valuation as (a0, gamma)") {
  ChainFixture f;
  for (long n = -4; n <= 24; ++n) {
    Rat g(n, 4);
    g.canonicalize();
    GammaSpec spec = GammaSpec::rational({g});
    PairOfDefinition sel = minimal_pair_from_chain(f.chain, spec);
    CHECK(pairs_equivalent(PairOfDefinition(f.a0, spec), sel));
  }
}

TEST_CASE("ic degrees sit between the bounds") {
  std::vector<std::string> texts;
  for (const auto& t : valx::testing::golden_towers()) texts.push_back(t.text);
  for (const char* g : {"1/7", "1/6", "1/5", "1", "quadirr 0 1/10 2"}) {
    std::string spec = std::string(g).rfind("quadirr", 0) == 0 ? g : std::string("rational ") + g;
    texts.push_back("base padic 3\next a : x^3 - 1/3 @ -1/3\ngamma " + spec + "\npair a\n");
  }
  for (const auto& text : texts) {
    Workspace w = make(text);
    PairOfDefinition pd = w.pair();
    ICReport r = ic_classify(pd);
    const int n = degree(pd);
    if (r.verdict == ICVerdict::Exact) {
      CHECK(n % r.degree == 0);
      CHECK(r.degree % r.lower_degree == 0);
    }
    CHECK(r.upper_degree % r.lower_degree == 0);
    if (r.j && *r.j == 1 && pd.spec.is_rational()) CHECK(pd.cmp(pd.gamma(), kras(pd.a)) > 0);
  }
}
