#include "valx/extension.hpp"

#include <algorithm>

namespace valx {

PairOfDefinition::PairOfDefinition(FieldElement a_, GammaSpec spec_, std::string name_, MinimalityCert minimal_)
    : a(std::move(a_)), spec(std::move(spec_)), name(std::move(name_)), minimal(minimal_) {
  if (spec.rank() != a.level()->field().rank())
    fail(ErrorKind::RankMismatch, "gamma has rank " + std::to_string(spec.rank()) + ", the field has rank " +
                                      std::to_string(a.level()->field().rank()));
}

std::string to_string(OmegaKind kind) {
  return kind == OmegaKind::ValueTranscendental ? "value-transcendental" : "residue-transcendental";
}

GroupValue nu_a_gamma(const Poly& f, const PairOfDefinition& pd) {
  if (f.is_zero()) return GroupValue::infinity();
  std::vector<FieldElement> c = taylor_expand(f, pd.a);
  const GroupValue g = pd.gamma();
  GroupValue best = GroupValue::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    GroupValue v = c[i].value() + g.scaled(Int(static_cast<unsigned long>(i)));
    if (pd.cmp(v, best) < 0) best = v;
  }
  return best;
}

GroupValue nu_a_gamma(const Poly& num, const Poly& den, const PairOfDefinition& pd) {
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  GroupValue n = nu_a_gamma(num, pd);
  if (n.is_infinite()) return n;
  return n - nu_a_gamma(den, pd);
}

OmegaKind classify(const PairOfDefinition& pd) {
  return pd.spec.is_rational() ? OmegaKind::ResidueTranscendental : OmegaKind::ValueTranscendental;
}

bool pairs_equivalent(const PairOfDefinition& p1, const PairOfDefinition& p2) {
  if (p1.spec.variant().index() != p2.spec.variant().index() || p1.spec.rank() != p2.spec.rank())
    fail(ErrorKind::IncomparableSpecs, "gamma specs " + p1.spec.to_string() + " and " + p2.spec.to_string() +
                                           " live in different orderings");
  if (!(p1.spec == p2.spec)) return false;
  return p1.cmp((p1.a - p2.a).value(), p1.gamma()) >= 0;
}

Poly min_poly(const PairOfDefinition& pd) { return minimal_polynomial(pd.a, pd.ground()); }

int degree(const PairOfDefinition& pd) { return min_poly(pd).degree(); }

namespace {

// Index of the unique monomial realizing the value of e.
std::size_t leading_monomial(const FieldElement& e, const std::vector<GroupValue>& mono_values) {
  std::size_t best = 0;
  GroupValue bv = GroupValue::infinity();
  for (std::size_t j = 0; j < e.coords().size(); ++j) {
    if (e.coords()[j].is_zero()) continue;
    GroupValue v = FieldElement::from_base(e.level()->path().front(), e.coords()[j]).value() + mono_values[j];
    if (compare(v, bv) == std::strong_ordering::less) {
      bv = v;
      best = j;
    }
  }
  return best;
}

}  // namespace

SubgroupDesc field_value_group(const FieldElement& a) {
  LevelPtr k = a.level()->path().front();
  SubgroupDesc group = k->value_group();
  const int n = minimal_polynomial(a, k).degree();
  if (n == 1) return group;
  GroupValue v = a.value();
  auto order = torsion_order(v, group);
  if (order && *order == n) return group.with(v);

  // K(a) is a subfield of a totally ramified tower, so distinct leading
  // monomials of a valuation-reduced basis give its value group.
  const LevelPtr& top = a.level();
  std::vector<GroupValue> mono_values;
  for (std::size_t j = 0; j < static_cast<std::size_t>(top->total_degree()); ++j) {
    std::vector<RatFun> c(static_cast<std::size_t>(top->total_degree()),
                          RatFun::zero(top->field().characteristic(), top->field().nvars()));
    c[j] = RatFun::one(top->field().characteristic(), top->field().nvars());
    mono_values.push_back(FieldElement(top, c).value());
  }
  std::vector<std::pair<std::size_t, FieldElement>> pivots;
  FieldElement power = FieldElement::one(top);
  for (int i = 0; i < n; ++i, power = power * a) {
    FieldElement w = power;
    for (int step = 0; !w.is_zero(); ++step) {
      if (step > 256) fail(ErrorKind::Unsupported, "value group reduction for K(" + a.to_string() + ") does not settle");
      std::size_t lead = leading_monomial(w, mono_values);
      auto it = std::find_if(pivots.begin(), pivots.end(), [&](const auto& p) { return p.first == lead; });
      if (it == pivots.end()) {
        pivots.push_back({lead, w});
        break;
      }
      w = w - it->second * FieldElement::from_base(top, w.coords()[lead] / it->second.coords()[lead]);
    }
  }
  for (const auto& [j, w] : pivots) group = group.with(mono_values[j]);
  return group;
}

bool is_minimal_pair_by_value_order(const PairOfDefinition& pd) {
  const int n = degree(pd);
  if (n == 1) return true;
  GroupValue v = pd.a.value();
  auto order = torsion_order(v, pd.ground()->value_group());
  return order && *order == n && pd.cmp(v, pd.gamma()) < 0;
}

GroupValue omega_Q(const PairOfDefinition& pd) {
  const GroupValue g = pd.gamma();
  if (degree(pd) == 1) return g;
  ConjDiffs d = conjugate_differences(pd.a);
  GroupValue total = g;
  for (const auto& v : d.values) total += min_value(g, v, pd.spec);
  for (int i = 0; i < d.infinite_count; ++i) total += g;
  return total;
}

GroupValue delta(const Poly& f, const PairOfDefinition& pd) {
  if (f.degree() < 1) fail(ErrorKind::Unsupported, "delta of a constant polynomial");
  std::vector<FieldElement> c = taylor_expand(f, pd.a);
  const GroupValue g = pd.gamma();
  if (c[0].is_zero()) return g;
  NewtonPolygon np = newton_polygon(Poly(c[0].level(), c));
  return min_value(g, np.segments.back().slope, pd.spec);
}

GroupValue nu_Q(const Poly& f, const Poly& q, const GroupValue& omega_q, const PairOfDefinition& pd) {
  std::vector<Poly> parts = q_expand(f, q);
  GroupValue best = GroupValue::infinity();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) continue;
    GroupValue v = nu_a_gamma(parts[i], pd) + omega_q.scaled(Int(static_cast<unsigned long>(i)));
    if (pd.cmp(v, best) < 0) best = v;
  }
  return best;
}

StructureReport structure_report(const PairOfDefinition& pd) {
  if (pd.minimal == MinimalityCert::None)
    fail(ErrorKind::NotMinimalAsserted, "structure report needs a minimal pair");
  StructureReport r;
  r.kind = classify(pd);
  r.omega_q = omega_Q(pd);
  r.field_group = field_value_group(pd.a);
  const std::string residue = pd.a.level()->field().residue_field_name();
  if (r.kind == OmegaKind::ValueTranscendental) {
    r.value_group = r.field_group;
    r.value_group_text = r.field_group.to_string() + " (+) Z*omegaQ";
    r.residue_field = residue;
  } else {
    r.index_e = torsion_order(r.omega_q, r.field_group);
    if (!r.index_e) fail(ErrorKind::InvariantBreach, "omegaQ is not torsion in the residue-transcendental case");
    r.value_group = r.field_group.with(r.omega_q);
    r.value_group_text = r.value_group.to_string();
    r.residue_field = residue + "(xi)";
  }
  return r;
}

std::string PurityVerdict::to_string() const {
  switch (kind) {
    case PurityKind::PE1: return "PE1";
    case PurityKind::PE2: return "PE2";
    case PurityKind::WeaklyPure: return "weakly-pure";
    case PurityKind::Deferred: return "deferred";
  }
  return "deferred";
}

PurityVerdict classify_purity(const PairOfDefinition& pd) {
  PurityVerdict v;
  auto e = torsion_order(pd.gamma(), pd.a.level()->value_group());
  if (!e) {
    v.kind = PurityKind::PE1;
  } else if (*e == 1) {
    v.kind = PurityKind::PE2;
    v.e = e;
  } else {
    v.kind = PurityKind::WeaklyPure;
    v.e = e;
  }
  return v;
}

bool coincidence_test(const PairOfDefinition& p1, const PairOfDefinition& p2) {
  if (p1.minimal == MinimalityCert::None || p2.minimal == MinimalityCert::None)
    fail(ErrorKind::NotMinimalAsserted, "coincidence test needs two minimal pairs");
  if (!(p1.spec == p2.spec)) return false;
  return min_poly(p1) == min_poly(p2);
}

int simultaneous_extension_bound(const PairOfDefinition& pd) { return degree(pd); }

}  // namespace valx
