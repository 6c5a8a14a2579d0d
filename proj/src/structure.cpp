#include "valx/structure.hpp"

#include <cctype>

namespace valx {

std::vector<GroupValue> DistinguishedChain::deltas() const {
  std::vector<GroupValue> out;
  for (std::size_t i = 0; i + 1 < elements.size(); ++i) out.push_back((elements[i] - elements[i + 1]).value());
  return out;
}

namespace {

int degree_over_base(const FieldElement& e) { return minimal_polynomial(e, e.level()->path().front()).degree(); }

}  // namespace

bool verify_chain(const DistinguishedChain& chain) {
  if (chain.elements.empty()) fail(ErrorKind::BrokenMonotonicity, "empty chain");
  LevelPtr k = chain.elements.front().level()->path().front();
  if (!k->field().henselian) fail(ErrorKind::NotHenselianContext, "distinguished chains need a henselian base");
  std::vector<int> degrees;
  for (const auto& e : chain.elements) degrees.push_back(degree_over_base(e));
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i)
    if (degrees[i] <= degrees[i + 1])
      fail(ErrorKind::BrokenMonotonicity, "degrees " + std::to_string(degrees[i]) + " and " +
                                              std::to_string(degrees[i + 1]) + " at position " + std::to_string(i));
  std::vector<GroupValue> d = chain.deltas();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (compare(d[i], d[i + 1]) != std::strong_ordering::greater)
      fail(ErrorKind::BrokenMonotonicity, "deltas " + d[i].to_string() + " and " + d[i + 1].to_string() +
                                              " at position " + std::to_string(i));
  return degrees.back() == 1;
}

std::size_t minimal_pair_index(const DistinguishedChain& chain, const GammaSpec& spec) {
  const GroupValue g = gamma_value(spec);
  std::vector<GroupValue> d = chain.deltas();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (cmp(g, d[i], spec) > 0) return i;
  return chain.elements.size() - 1;
}

PairOfDefinition minimal_pair_from_chain(const DistinguishedChain& chain, const GammaSpec& spec,
                                         const std::vector<std::string>& names) {
  std::size_t i = minimal_pair_index(chain, spec);
  std::string name = i < names.size() ? names[i] : chain.elements[i].to_string();
  return PairOfDefinition(chain.elements[i], spec, name, MinimalityCert::Chain);
}

std::optional<FieldElement> refute_chain_step(const DistinguishedChain& chain, std::size_t i,
                                              const std::vector<FieldElement>& candidates) {
  std::vector<GroupValue> d = chain.deltas();
  if (i >= d.size()) return std::nullopt;
  const int n = degree_over_base(chain.elements[i]);
  for (const auto& z : candidates) {
    if (degree_over_base(z) >= n) continue;
    if (compare((chain.elements[i] - z).value(), d[i]) == std::strong_ordering::greater) return z;
  }
  return std::nullopt;
}

int j_count(const PairOfDefinition& pd) {
  Poly q = min_poly(pd);
  if (q.derivative().is_zero()) fail(ErrorKind::Inseparable, "j-count needs a separable element");
  if (q.degree() == 1) return 1;
  ConjDiffs d = conjugate_differences(pd.a);
  const GroupValue g = pd.gamma();
  const bool strict = classify(pd) == OmegaKind::ValueTranscendental;
  int j = 1;
  for (const auto& v : d.values) {
    auto c = pd.cmp(v, g);
    if (c > 0 || (!strict && c == 0)) ++j;
  }
  return j;
}

long tame_degree(long degree, unsigned long residue_char_exponent) {
  long p = static_cast<long>(residue_char_exponent);
  if (p <= 1) return degree;
  while (degree % p == 0) degree /= p;
  return degree;
}

long tame_degree(const LevelPtr& level) {
  return tame_degree(level->total_degree(), level->field().residue_char_exponent());
}

std::string to_string(ICVerdict v) {
  switch (v) {
    case ICVerdict::Exact: return "Exact";
    case ICVerdict::ProperWithJ: return "ProperWithJ";
    case ICVerdict::BoundsOnly: return "BoundsOnly";
  }
  return "BoundsOnly";
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

std::string henselization(const std::string& gen) { return gen.empty() ? "K^h" : "K(" + gen + ")^h"; }

ICReport exact(const std::string& field, int degree, const std::string& rule) {
  ICReport r;
  r.verdict = ICVerdict::Exact;
  r.field = field;
  r.degree = degree;
  r.lower = r.upper = field;
  r.lower_degree = r.upper_degree = degree;
  r.rule = rule;
  return r;
}

// A tower generator inside K(a) of the given degree over K, for naming a subfield.
std::string subfield_name(const PairOfDefinition& pd, int n, long d) {
  const LevelPtr& top = pd.a.level();
  if (top->total_degree() == n) {
    for (const auto& l : top->path()) {
      if (l->is_base()) continue;
      FieldElement g = l->generator();
      if (minimal_polynomial(g, pd.ground()).degree() == d) return henselization(l->name());
    }
  }
  return "tame-subfield(" + std::to_string(d) + ")^h";
}

}  // namespace

ICReport ic_classify(const PairOfDefinition& pd) {
  if (pd.minimal == MinimalityCert::None) fail(ErrorKind::NotMinimalAsserted, "classification needs a minimal pair");
  const std::string ka = henselization(pd.name);
  Poly q = min_poly(pd);
  const int n = q.degree();
  if (n == 1) return exact("K^h", 1, "a-in-base");

  if (q.derivative().is_zero()) {
    const unsigned long p = pd.a.level()->field().characteristic();
    long pk = 1;
    Poly g = q;
    while (g.derivative().is_zero()) {
      g = g.deflated(static_cast<int>(p));
      pk *= static_cast<long>(p);
    }
    if (g.degree() == 1) return exact("K^h", 1, "purely-inseparable");
    const std::string b = (is_identifier(pd.name) ? pd.name : "(" + pd.name + ")") + "^" + std::to_string(pk);
    const FieldElement bel = pd.a.pow(pk);
    if (pd.spec.is_above_all()) return exact(henselization(b), g.degree(), "above-all");
    GroupValue scaled_gamma = pd.gamma().scaled(Int(pk));
    if (pd.cmp(scaled_gamma, kras(bel)) > 0) return exact(henselization(b), g.degree(), "krasner-separable-part");
    ICReport r;
    r.verdict = ICVerdict::BoundsOnly;
    r.lower = "K^h";
    r.upper = ka;
    r.upper_degree = n;
    r.rule = "bounds";
    return r;
  }

  if (pd.spec.is_above_all()) return exact(ka, n, "above-all");
  const GroupValue k = kras(pd.a);
  if (pd.cmp(pd.gamma(), k) > 0) {
    ICReport r = exact(ka, n, "krasner");
    r.j = 1;
    return r;
  }
  const bool value_transc = classify(pd) == OmegaKind::ValueTranscendental;
  const int j = j_count(pd);
  const long lower = value_transc ? tame_degree(n, pd.a.level()->field().residue_char_exponent()) : 1;
  ICReport r;
  r.j = j;
  r.upper = ka;
  r.upper_degree = n;
  r.lower_degree = static_cast<int>(lower);
  r.lower = lower == 1 ? "K^h" : subfield_name(pd, n, lower);
  r.disjunct_undecided = !value_transc && j >= 2;

  bool prime = n >= 2;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) prime = false;
  if (prime) {
    ICReport e = exact("K^h", 1, "prime-degree");
    e.j = j;
    e.upper = ka;
    e.upper_degree = n;
    e.disjunct_undecided = r.disjunct_undecided;
    return e;
  }
  std::vector<long> candidates;
  for (long m = lower; m < n; m += lower)
    if (n % m == 0) candidates.push_back(m);
  if (candidates.size() == 1 && candidates[0] == lower) {
    ICReport e = exact(r.lower, static_cast<int>(lower), "divisor-pinning");
    e.j = j;
    e.upper = ka;
    e.upper_degree = n;
    e.disjunct_undecided = r.disjunct_undecided;
    return e;
  }
  if (lower == n) {
    r.verdict = ICVerdict::BoundsOnly;
    r.rule = "bounds";
    return r;
  }
  r.verdict = ICVerdict::ProperWithJ;
  r.rule = "proper-with-j";
  return r;
}

bool minimal_field_invariants_check(const PairOfDefinition& p1, const PairOfDefinition& p2) {
  if (!coincidence_test(p1, p2)) fail(ErrorKind::NotCoincident, "the two pairs define different valuations");
  auto index = [](const PairOfDefinition& pd) {
    const int n = degree(pd);
    if (n == 1) return Int(1);
    auto e = torsion_order(pd.a.value(), pd.ground()->value_group());
    if (!e) fail(ErrorKind::NotTotallyRamified, "value of the generator is not torsion");
    return *e;
  };
  const std::string r1 = p1.a.level()->field().residue_field_name();
  const std::string r2 = p2.a.level()->field().residue_field_name();
  return index(p1) == index(p2) && r1 == r2;
}

}  // namespace valx
