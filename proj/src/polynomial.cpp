#include "valx/polynomial.hpp"

namespace valx {

namespace {

FieldElement at_level(const FieldElement& c, const LevelPtr& level) {
  if (c.level() == level) return c;
  if (level->has_ancestor(c.level())) return c.lifted(level);
  return c.lowered(level);
}

}  // namespace

Poly::Poly(LevelPtr level, std::vector<FieldElement> coeffs) : level_(std::move(level)), c_(std::move(coeffs)) {
  for (auto& c : c_) c = at_level(c, level_);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.level(), {c}); }

Poly Poly::linear(const FieldElement& a) { return Poly(a.level(), {-a, FieldElement::one(a.level())}); }

Poly Poly::monomial(const LevelPtr& level, int k) {
  std::vector<FieldElement> c(static_cast<std::size_t>(k) + 1, FieldElement::zero(level));
  c.back() = FieldElement::one(level);
  return Poly(level, std::move(c));
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement::zero(level_);
  return c_[static_cast<std::size_t>(i)];
}

Poly Poly::lifted(const LevelPtr& target) const {
  if (target == level_) return *this;
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.lifted(target));
  return Poly(target, std::move(c));
}

Poly Poly::lowered(const LevelPtr& target) const {
  if (target == level_) return *this;
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.lowered(target));
  return Poly(target, std::move(c));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.level_ != b.level_) {
    LevelPtr l = common_level(a.level_, b.level_);
    return a.lifted(l) + b.lifted(l);
  }
  std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(a.level_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
  return Poly(a.level_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.level_ != b.level_) {
    LevelPtr l = common_level(a.level_, b.level_);
    return a.lifted(l) * b.lifted(l);
  }
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.level_);
  std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, FieldElement::zero(a.level_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
  }
  return Poly(a.level_, std::move(c));
}

Poly Poly::scaled(const FieldElement& s) const {
  LevelPtr l = common_level(level_, s.level());
  std::vector<FieldElement> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x * s);
  return Poly(l, std::move(c));
}

Poly Poly::pow(int e) const {
  if (e < 0) fail(ErrorKind::Unsupported, "negative power of a polynomial");
  Poly result = constant(FieldElement::one(level_)), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& other) const {
  if (c_.size() != other.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == other.c_[i])) return false;
  return true;
}

FieldElement Poly::eval(const FieldElement& a) const {
  LevelPtr l = common_level(level_, a.level());
  FieldElement acc = FieldElement::zero(l);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<FieldElement> c;
  for (std::size_t i = 1; i < c_.size(); ++i)
    c.push_back(c_[i] * FieldElement::rational(level_, Rat(static_cast<long>(i))));
  return Poly(level_, std::move(c));
}

Poly Poly::deflated(int k) const {
  std::vector<FieldElement> c;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i % static_cast<std::size_t>(k) == 0) c.push_back(c_[i]);
    else if (!c_[i].is_zero()) fail(ErrorKind::InvariantBreach, "polynomial is not a polynomial in x^" + std::to_string(k));
  }
  return Poly(level_, std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const FieldElement& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-' && cs.find(' ') == std::string::npos;
    if (negative) cs = cs.substr(1);
    std::string term;
    if (mono.empty()) term = cs;
    else if (cs == "1") term = mono;
    else term = (cs.find(' ') == std::string::npos ? cs : "(" + cs + ")") + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (!g.is_monic()) fail(ErrorKind::NonMonicDivisor, "divisor is not monic");
  LevelPtr l = common_level(f.level(), g.level());
  Poly r = f.lifted(l);
  Poly gl = g.lifted(l);
  const int dg = gl.degree();
  if (r.degree() < dg) return {Poly::zero(l), r};
  std::vector<FieldElement> q(static_cast<std::size_t>(r.degree() - dg + 1), FieldElement::zero(l));
  std::vector<FieldElement> rc = r.coeffs();
  for (int k = static_cast<int>(rc.size()) - 1; k >= dg; --k) {
    FieldElement lead = rc[static_cast<std::size_t>(k)];
    if (lead.is_zero()) continue;
    q[static_cast<std::size_t>(k - dg)] = lead;
    for (int i = 0; i <= dg; ++i) {
      const FieldElement& gi = gl.coeffs()[static_cast<std::size_t>(i)];
      if (!gi.is_zero()) rc[static_cast<std::size_t>(k - dg + i)] = rc[static_cast<std::size_t>(k - dg + i)] - lead * gi;
    }
  }
  rc.resize(static_cast<std::size_t>(dg));
  return {Poly(l, std::move(q)), Poly(l, std::move(rc))};
}

Poly gcd(const Poly& f, const Poly& g) {
  Poly a = f.monic(), b = g.monic();
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

bool is_separable(const Poly& f) {
  Poly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<FieldElement> taylor_expand(const Poly& f, const FieldElement& a) {
  LevelPtr l = common_level(f.level(), a.level());
  std::vector<FieldElement> b = f.lifted(l).coeffs();
  FieldElement al = a.lifted(l);
  const int n = static_cast<int>(b.size()) - 1;
  for (int k = 0; k < n; ++k)
    for (int j = n - 1; j >= k; --j) b[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)] + al * b[static_cast<std::size_t>(j) + 1];
  return b;
}

Poly taylor_reconstruct(const std::vector<FieldElement>& c, const FieldElement& a) {
  if (c.empty()) return Poly::zero(a.level());
  Poly lin = Poly::linear(a);
  Poly acc = Poly::constant(c.back());
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * lin + Poly::constant(*it);
  return acc;
}

std::vector<Poly> q_expand(const Poly& f, const Poly& q) {
  if (!q.is_monic() || q.degree() < 1) fail(ErrorKind::NonMonicQ, "expansion polynomial must be monic of degree >= 1");
  std::vector<Poly> parts;
  Poly rest = f;
  while (!rest.is_zero()) {
    auto [quot, rem] = divmod(rest, q);
    parts.push_back(rem);
    rest = quot;
  }
  return parts;
}

Poly q_reconstruct(const std::vector<Poly>& parts, const Poly& q) {
  if (parts.empty()) return Poly::zero(q.level());
  Poly acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = acc * q + *it;
  return acc;
}

Poly minimal_polynomial(const FieldElement& e, const LevelPtr& over) {
  if (!e.level()->has_ancestor(over)) fail(ErrorKind::LevelMismatch, "minimal polynomial over a non-ancestor level");
  const std::size_t d = static_cast<std::size_t>(e.level()->total_degree() / over->total_degree());
  struct Row {
    std::size_t pivot;
    std::vector<FieldElement> v;
    std::vector<FieldElement> comb;
  };
  std::vector<Row> basis;
  FieldElement power = FieldElement::one(e.level());
  const FieldElement zero = FieldElement::zero(over);
  for (std::size_t m = 0; m <= d; ++m) {
    std::vector<FieldElement> w = coordinates_over(power, over);
    std::vector<FieldElement> comb(m + 1, zero);
    comb[m] = FieldElement::one(over);
    for (const Row& row : basis) {
      FieldElement f = w[row.pivot];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < d; ++i)
        if (!row.v[i].is_zero()) w[i] = w[i] - f * row.v[i];
      for (std::size_t i = 0; i < row.comb.size(); ++i)
        if (!row.comb[i].is_zero()) comb[i] = comb[i] - f * row.comb[i];
    }
    std::size_t piv = 0;
    while (piv < d && w[piv].is_zero()) ++piv;
    if (piv == d) return Poly(over, std::move(comb));
    FieldElement inv = w[piv].inverse();
    for (auto& x : w) x = x * inv;
    for (auto& x : comb) x = x * inv;
    basis.push_back({piv, std::move(w), std::move(comb)});
    power = power * e;
  }
  fail(ErrorKind::InvariantBreach, "no linear dependency among powers");
}

}  // namespace valx
