// Acceptance gate: one line per criterion, exit status 1 if any fails.
//
//   acceptance <path to valx executable>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "../support/gen.hpp"

using namespace valx;
using valx::testing::random_element;
using valx::testing::random_poly;
using valx::testing::Rng;
using valx::testing::uniform;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

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

std::string str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Rank-appropriate gamma declarations of each kind for a tower preamble.
std::vector<GammaSpec> gamma_variants(std::size_t rank) {
  if (rank == 1)
    return {GammaSpec::rational({Rat(1, 5)}), GammaSpec::quadratic({Rat(0)}, Rat(1, 10), Int(2)),
            GammaSpec::above_all(1)};
  return {GammaSpec::rational({Rat(0), Rat(1)}), GammaSpec::quadratic({Rat(0), Rat(0)}, Rat(1, 2), Int(2)),
          GammaSpec::above_all(rank)};
}

// The golden towers, each with the element whose pairs we test.
struct TowerCase {
  std::string name;
  Workspace w;
  FieldElement a;
};

std::vector<TowerCase> tower_cases() {
  std::vector<TowerCase> out;
  for (const auto& t : valx::testing::golden_towers()) {
    Workspace w = make(t.text);
    FieldElement a = w.pair().a;
    out.push_back({t.name, std::move(w), a});
  }
  return out;
}

Outcome cubic_goldens() {
  Outcome o;
  for (long p : {3L, 5L}) {
    const std::string ps = std::to_string(p);
    const Rat kras_want = Rat(1) / Rat(p - 1) - Rat(1) / Rat(p);
    const std::string tower = "base padic " + ps + "\next a : x^" + ps + " - 1/" + ps + " @ -1/" + ps + "\n";
    Workspace w = make(tower);
    o.expect(kras(w.element("a")) == GroupValue::scalar(kras_want), "kras for p=" + ps);
    Workspace above = make(tower + "gamma rational " + str(kras_want + Rat(1, 100)) + "\npair a\n");
    ICReport r = ic_classify(above.pair());
    o.expect(r.verdict == ICVerdict::Exact && r.field == "K(a)^h", "gamma above kras, p=" + ps);
    Workspace at = make(tower + "gamma rational " + str(kras_want) + "\npair a\n");
    r = ic_classify(at.pair());
    o.expect(r.verdict == ICVerdict::Exact && r.field == "K^h" && r.rule == "prime-degree", "gamma = kras, p=" + ps);
  }
  return o;
}

Outcome artin_schreier_golden() {
  Outcome o;
  Workspace w = make(valx::testing::golden_towers()[2].text);
  const LevelPtr& top = w.top();
  o.expect(top->parent()->degree() == 3 && top->degree() == 2, "tower degrees (3, 2)");
  o.expect(top->total_degree() == 6, "total degree 6");
  PairOfDefinition pd = w.pair();
  o.expect(pd.a.value() == q(1, 6), "generator value 1/6");
  o.expect(minimal_polynomial(pd.a, pd.ground()).degree() == 6, "generator of degree 6");
  o.expect(compare(pd.a.value(), kras(pd.a)) < 0, "value(a) < kras strictly");
  ICReport r = ic_classify(pd);
  o.expect(r.verdict == ICVerdict::Exact && r.lower_degree == 2 && r.degree == 2 && r.field == "K(a2)^h",
           "Exact K(a2)^h from the tame lower bound");
  return o;
}

Outcome two_variable_golden() {
  Outcome o;
  Workspace w = make(valx::testing::golden_towers()[3].text);
  PairOfDefinition pd = w.pair();
  o.expect(pd.a.value() == GroupValue(RatVec{Rat(0), Rat(1, 9)}), "root value (0,1/9)");
  o.expect(kras(w.element("a^3")) == GroupValue(RatVec{Rat(1, 2), Rat(0)}), "kras(a^3) = (1/2,0)");
  o.expect(pd.cmp(pd.gamma(), GroupValue(RatVec{Rat(1, 2), Rat(0)})) > 0, "gamma above (1/2,0)");
  ICReport r = ic_classify(pd);
  o.expect(r.verdict == ICVerdict::Exact && r.degree == 3 && r.rule == "krasner-separable-part",
           "Exact separable part of degree 3");
  return o;
}

// Random pairs (a + c, gamma) with value(c) > value(a) and gamma > value(a):
// still minimal by the value-order criterion.
Outcome omega_q_routes() {
  Outcome o;
  Rng rng(1001);
  Workspace w = make(valx::testing::golden_towers()[0].text);
  o.expect(nu_a_gamma(min_poly(w.pair()), w.pair()) == q(8, 15) && omega_Q(w.pair()) == q(8, 15), "worked value 8/15");
  auto cases = tower_cases();
  // the inseparable generator has no conjugate differences: use its separable part a^3
  cases[3].a = cases[3].a.pow(3);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    TowerCase& t = cases[static_cast<std::size_t>(i) % cases.size()];
    const LevelPtr k = t.a.level()->path().front();
    FieldElement c = FieldElement::from_base(t.a.level(), valx::testing::random_base(rng, k->field()));
    if (compare(c.value(), t.a.value()) <= 0) c = FieldElement::zero(t.a.level());
    RatVec base = t.a.value().vec();
    base[0] += valx::testing::small_rat(rng, 4) * valx::testing::small_rat(rng, 4) + Rat(1, 7);
    if (compare(GroupValue(base), t.a.value()) <= 0) base[0] = t.a.value().vec()[0] + Rat(1, 11);
    GammaSpec spec = uniform(rng, 0, 1) ? GammaSpec::rational(base)
                                        : GammaSpec::quadratic(base, Rat(1, uniform(rng, 5, 40)), Int(2));
    PairOfDefinition pd(t.a + c, spec);
    if (!is_minimal_pair_by_value_order(pd)) {
      o.expect(false, t.name + ": generated pair is not minimal");
      continue;
    }
    GroupValue taylor = nu_a_gamma(min_poly(pd), pd), polygon = omega_Q(pd);
    o.expect(pd.cmp(taylor, polygon) == 0, t.name + ": omegaQ " + taylor.to_string() + " vs " + polygon.to_string());
    ++checked;
  }
  o.expect(checked == 200, "not all 200 pairs checked");
  return o;
}

Outcome nu_q_agreement() {
  Outcome o;
  Rng rng(1002);
  for (auto& t : tower_cases()) {
    PairOfDefinition pd = t.w.pair();
    if (!is_minimal_pair_by_value_order(pd)) {
      o.expect(false, t.name + ": golden pair not minimal");
      continue;
    }
    Poly Q = min_poly(pd);
    GroupValue wq = nu_a_gamma(Q, pd);
    for (int i = 0; i < 1000; ++i) {
      Poly f = random_poly(rng, pd.ground(), 12);
      o.expect(pd.cmp(nu_Q(f, Q, wq, pd), nu_a_gamma(f, pd)) == 0, t.name + ": nu_Q differs on " + f.to_string());
    }
  }
  return o;
}

Outcome valuation_axioms() {
  Outcome o;
  Rng rng(1003);
  for (auto& t : tower_cases()) {
    const LevelPtr k = t.a.level()->path().front();
    for (const GammaSpec& spec : gamma_variants(k->field().rank())) {
      PairOfDefinition pd(t.a, spec);
      for (int i = 0; i < 1000; ++i) {
        Poly f = random_poly(rng, k, 4), g = random_poly(rng, k, 4);
        GroupValue vf = nu_a_gamma(f, pd), vg = nu_a_gamma(g, pd);
        o.expect(nu_a_gamma(f * g, pd) == vf + vg, t.name + " " + spec.to_string() + ": product");
        GroupValue vs = nu_a_gamma(f + g, pd);
        const GroupValue& m = min_value(vf, vg, spec);
        o.expect(pd.cmp(vs, m) >= 0, t.name + " " + spec.to_string() + ": ultrametric");
        if (pd.cmp(vf, vg) != 0) o.expect(vs == m, t.name + " " + spec.to_string() + ": equality case");
      }
    }
  }
  return o;
}

Outcome delta_oracle() {
  Outcome o;
  Rng rng(1004);
  for (auto& t : tower_cases()) {
    PairOfDefinition pd = t.w.pair();
    const LevelPtr& top = pd.a.level();
    for (int i = 0; i < 100; ++i) {
      const int n = static_cast<int>(uniform(rng, 1, 4));
      Poly f = Poly::constant(FieldElement::one(top));
      GroupValue best;
      for (int j = 0; j < n; ++j) {
        FieldElement r = uniform(rng, 0, 1) ? random_element(rng, top, 2) : pd.a + random_element(rng, top, 1);
        f = f * Poly::linear(r);
        GroupValue v = min_value(pd.gamma(), (pd.a - r).value(), pd.spec);
        if (j == 0 || pd.cmp(v, best) > 0) best = v;
      }
      o.expect(delta(f, pd) == best, t.name + ": delta of " + f.to_string());
    }
  }
  return o;
}

Outcome ostrowski_table() {
  Outcome o;
  struct Row {
    long n, e, f, p, d;
  };
  const Row rows[] = {{3, 1, 1, 3, 1}, {5, 1, 1, 5, 1}, {9, 1, 1, 3, 2}, {6, 6, 1, 3, 0},   {6, 2, 1, 3, 1},
                      {6, 2, 3, 5, 0}, {50, 2, 1, 5, 2}, {4, 1, 1, 2, 2}, {12, 3, 4, 1, 0}, {27, 3, 3, 3, 1}};
  for (const Row& r : rows)
    o.expect(ostrowski_defect(r.n, r.e, r.f, static_cast<unsigned long>(r.p)) == r.d,
             "(" + std::to_string(r.n) + "," + std::to_string(r.e) + "," + std::to_string(r.f) + "," +
                 std::to_string(r.p) + ")");
  bool threw = false;
  try {
    ostrowski_defect(4, 3, 1, 3);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::NotPowerOfCharExponent;
  }
  o.expect(threw, "non power of p rejected");
  return o;
}

Outcome pcs_suite() {
  Outcome o;
  Rng rng(1005);
  for (int i = 0; i < 50; ++i) {
    Workspace w = make(i % 2 ? "base ratfun F3 t\n" : "base padic 5\n");
    const std::string var = i % 2 ? "t" : "5";
    const long len = uniform(rng, 3, 32);
    PcsPrefix p;
    FieldElement z = FieldElement::zero(w.top());
    std::vector<GroupValue> planted;
    long e = uniform(rng, -2, 2);
    auto term = [&](long exp, long c) {
      return w.element(std::to_string(c) + "*" + var + "^" + std::to_string(exp));
    };
    p.z.push_back(z);
    for (long k = 0; k < len; ++k) {
      z = z + term(e, uniform(rng, 1, 2));
      planted.push_back(q(e));
      if (k + 1 < len) p.z.push_back(z);
      e += uniform(rng, 1, 3);
    }
    planted.pop_back();
    const FieldElement limit = z;
    const std::string tag = "prefix " + std::to_string(i);
    // verify_prefix includes the exhaustive pairwise identity
    o.expect(verify_prefix(p), tag + ": verify");
    o.expect(p.gaps() == planted, tag + ": gaps");
    o.expect(is_limit_at_prefix(limit, p), tag + ": limit");
    const long last = planted.empty() ? 0 : static_cast<long>(planted.back().vec()[0].get_num().get_si());
    for (int k = 0; k < 5; ++k)
      o.expect(is_limit_at_prefix(limit + term(last + uniform(rng, 1, 6), uniform(rng, 1, 2)), p),
               tag + ": stability");
    Track t = poly_track(Poly::linear(limit), p);
    o.expect(t.kind == TrackKind::IncreasingOnTail && t.values == planted, tag + ": track");
  }
  return o;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return out;
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.expect(false, "path to valx not given");
    return o;
  }
  int s1 = 0, s2 = 0;
  std::string a = run_capture("'" + cli + "' --selftest", s1), b = run_capture("'" + cli + "' --selftest", s2);
  o.expect(s1 == 0 && s2 == 0, "selftest exit status");
  o.expect(!a.empty(), "selftest printed nothing");
  o.expect(a == b, "outputs differ");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "cubic p-adic goldens, p = 3 and 5", 1.0, cubic_goldens},
      {2, "Artin-Schreier tower golden", 2.0, artin_schreier_golden},
      {3, "two-variable inseparable golden", 2.0, two_variable_golden},
      {4, "omegaQ by Taylor minimum and by polygon, 200 pairs", 0, omega_q_routes},
      {5, "nu_Q against nu_{a,gamma}, 1000 polynomials per tower", 0, nu_q_agreement},
      {6, "valuation axioms, 1000 pairs per tower and gamma kind", 0, valuation_axioms},
      {7, "delta against enumerated roots", 0, delta_oracle},
      {8, "Ostrowski defect table", 0, ostrowski_table},
      {9, "pseudo-Cauchy prefixes, 50 generated", 0, pcs_suite},
      {10, "selftest output is byte-identical across runs", 0, [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.ok = false;
      o.detail = "over the runtime bound";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << timing << ")";
    if (!o.ok) std::cout << ": " << o.detail;
    std::cout << "\n" << std::flush;
    failed += o.ok ? 0 : 1;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << criteria.size() - failed << "/"
            << criteria.size() << ")\n";
  return failed ? 1 : 0;
}
