#include "valx/pcs.hpp"

namespace valx {

std::vector<GroupValue> PcsPrefix::gaps() const {
  std::vector<GroupValue> out;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) out.push_back((z[i] - z[i + 1]).value());
  return out;
}

bool verify_prefix(const PcsPrefix& p) {
  if (p.z.size() < 3) return false;
  std::vector<GroupValue> g = p.gaps();
  for (const auto& v : g)
    if (v.is_infinite()) return false;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (compare(g[i], g[i + 1]) != std::strong_ordering::less) return false;
  for (std::size_t mu = 0; mu < p.z.size(); ++mu)
    for (std::size_t rho = mu + 1; rho < p.z.size(); ++rho)
      if (!((p.z[mu] - p.z[rho]).value() == g[mu])) return false;
  return true;
}

bool is_limit_at_prefix(const FieldElement& y, const PcsPrefix& p) {
  std::vector<GroupValue> g = p.gaps();
  for (std::size_t mu = 0; mu < g.size(); ++mu)
    if (!((y - p.z[mu]).value() == g[mu])) return false;
  return true;
}

std::string to_string(TrackKind k) {
  switch (k) {
    case TrackKind::IncreasingOnTail: return "increasing";
    case TrackKind::ConstantOnTail: return "constant";
    case TrackKind::Mixed: return "mixed";
  }
  return "mixed";
}

Track poly_track(const Poly& f, const PcsPrefix& p) {
  Track t;
  const std::size_t m = p.z.empty() ? 0 : p.z.size() - 1;
  for (std::size_t mu = 0; mu < m; ++mu) t.values.push_back(f.eval(p.z[mu]).value());
  if (t.values.size() < 2) {
    t.kind = t.values.empty() ? TrackKind::Mixed : TrackKind::ConstantOnTail;
    return t;
  }
  const std::size_t last = t.values.size() - 1;
  auto c = compare(t.values[last - 1], t.values[last]);
  if (c == std::strong_ordering::greater) {
    t.kind = TrackKind::Mixed;
    t.tail_start = last;
    return t;
  }
  const auto want = c;
  t.kind = want == std::strong_ordering::equal ? TrackKind::ConstantOnTail : TrackKind::IncreasingOnTail;
  std::size_t start = last - 1;
  while (start > 0 && compare(t.values[start - 1], t.values[start]) == want) --start;
  t.tail_start = start;
  return t;
}

PairLimitReport pair_limit_check(const PairOfDefinition& pd, const PcsPrefix& p) {
  PairLimitReport r;
  std::vector<GroupValue> g = p.gaps();
  const GroupValue gamma = pd.gamma();
  r.gamma_above_gaps = true;
  for (const auto& v : g)
    if (pd.cmp(gamma, v) <= 0) r.gamma_above_gaps = false;
  for (std::size_t mu = 0; mu < g.size(); ++mu)
    if (!((pd.a - p.z[mu]).value() == g[mu])) {
      r.first_mismatch = mu;
      break;
    }
  r.a_is_limit = !r.first_mismatch.has_value();
  r.consistent = r.gamma_above_gaps && r.a_is_limit;
  r.contradiction = !r.gamma_above_gaps && pd.minimal != MinimalityCert::None && r.a_is_limit;
  r.gap_sup = g.empty() ? GroupValue::infinity() : g.back();
  return r;
}

std::optional<FieldElement> limit_root_witness(const Poly& f, const PcsPrefix& p, const std::vector<FieldElement>& roots) {
  for (const auto& r : roots) {
    if (!f.eval(r).is_zero()) continue;
    if (is_limit_at_prefix(r, p)) return r;
  }
  return std::nullopt;
}

}  // namespace valx
