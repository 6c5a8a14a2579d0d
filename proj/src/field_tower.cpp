#include "valx/field_tower.hpp"

#include <algorithm>

#include "valx/newton.hpp"

namespace valx {

using Vec = std::vector<RatFun>;

// ---- base field ----

BaseField BaseField::padic(unsigned long p) {
  if (p < 2) fail(ErrorKind::Unsupported, "p-adic base needs a prime p >= 2");
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrorKind::Unsupported, std::to_string(p) + " is not prime");
  BaseField f;
  f.kind = BaseKind::PAdic;
  f.prime = p;
  return f;
}

BaseField BaseField::rational_functions(unsigned long coefficient_characteristic, std::vector<std::string> vars) {
  if (vars.empty()) fail(ErrorKind::Unsupported, "rational function field needs at least one variable");
  if (vars.size() > kMaxVars) fail(ErrorKind::Unsupported, "at most 4 variables");
  unsigned long p = coefficient_characteristic;
  if (p == 1) fail(ErrorKind::Unsupported, "characteristic 1");
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrorKind::Unsupported, std::to_string(p) + " is not prime");
  BaseField f;
  f.kind = BaseKind::RationalFunctions;
  f.prime = p;
  f.vars = std::move(vars);
  return f;
}

std::string BaseField::residue_field_name() const {
  if (kind == BaseKind::PAdic || prime != 0) return "F" + std::to_string(prime);
  return "Q";
}

std::string BaseField::to_string() const {
  if (kind == BaseKind::PAdic) return "padic " + std::to_string(prime);
  std::string s = "ratfun " + residue_field_name();
  for (const auto& v : vars) s += " " + v;
  return s;
}

namespace {

RatFun base_zero(const BaseField& f) { return RatFun::zero(f.characteristic(), f.nvars()); }

GroupValue base_value(const BaseField& f, const RatFun& r) {
  if (r.is_zero()) return GroupValue::infinity();
  if (f.kind == BaseKind::PAdic) {
    Rat q = r.num().lowest().second.to_rat();
    Int num = q.get_num(), den = q.get_den();
    Int pz(static_cast<unsigned long>(f.prime));
    Int rest;
    long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    return GroupValue::scalar(Rat(vn - vd));
  }
  const Monomial& mn = r.num().lowest().first;
  const Monomial& md = r.den().lowest().first;
  RatVec v(f.vars.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(mn.e[i] - md.e[i]);
  return GroupValue(v);
}

Coef base_residue(const BaseField& f, const RatFun& r) {
  if (f.kind == BaseKind::PAdic) return Coef(f.prime, r.num().lowest().second.to_rat());
  return r.num().lowest().second / r.den().lowest().second;
}

bool all_zero(const Vec& v, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i)
    if (!v[i].is_zero()) return false;
  return true;
}

Vec slice(const Vec& v, std::size_t off, std::size_t len) {
  return Vec(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + len));
}

void add_into(Vec& acc, std::size_t off, const Vec& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) acc[off + i] = acc[off + i] + x[i];
}

void sub_into(Vec& acc, std::size_t off, const Vec& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) acc[off + i] = acc[off + i] - x[i];
}

Vec mul_vec(const Level& level, const Vec& a, const Vec& b) {
  if (level.is_base()) return Vec{a[0] * b[0]};
  const Level& parent = *level.parent();
  const std::size_t tp = static_cast<std::size_t>(parent.total_degree());
  const std::size_t n = static_cast<std::size_t>(level.degree());
  const RatFun zero = base_zero(level.field());
  std::vector<bool> az(n), bz(n);
  for (std::size_t i = 0; i < n; ++i) {
    az[i] = all_zero(a, i * tp, (i + 1) * tp);
    bz[i] = all_zero(b, i * tp, (i + 1) * tp);
  }
  Vec acc((2 * n - 1) * tp, zero);
  for (std::size_t i = 0; i < n; ++i) {
    if (az[i]) continue;
    Vec ai = slice(a, i * tp, tp);
    for (std::size_t j = 0; j < n; ++j) {
      if (bz[j]) continue;
      add_into(acc, (i + j) * tp, mul_vec(parent, ai, slice(b, j * tp, tp)));
    }
  }
  // a^n = -(m_0 + ... + m_{n-1} a^{n-1})
  for (std::size_t k = 2 * n - 2; k >= n; --k) {
    if (all_zero(acc, k * tp, (k + 1) * tp)) continue;
    Vec top = slice(acc, k * tp, tp);
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElement& m = level.minpoly()[i];
      if (m.is_zero()) continue;
      sub_into(acc, (k - n + i) * tp, mul_vec(parent, top, m.coords()));
    }
    std::fill(acc.begin() + static_cast<long>(k * tp), acc.begin() + static_cast<long>((k + 1) * tp), zero);
  }
  acc.resize(n * tp);
  return acc;
}

GroupValue value_vec(const Level& level, const Vec& a) {
  if (level.is_base()) return base_value(level.field(), a[0]);
  const Level& parent = *level.parent();
  const std::size_t tp = static_cast<std::size_t>(parent.total_degree());
  GroupValue best = GroupValue::infinity();
  bool tie = false;
  for (std::size_t j = 0; j < static_cast<std::size_t>(level.degree()); ++j) {
    if (all_zero(a, j * tp, (j + 1) * tp)) continue;
    GroupValue v = value_vec(parent, slice(a, j * tp, tp)) + level.root_value().scaled(Int(static_cast<long>(j)));
    auto c = compare(v, best);
    if (c == std::strong_ordering::less) {
      best = v;
      tie = false;
    } else if (c == std::strong_ordering::equal) {
      tie = true;
    }
  }
  if (tie) fail(ErrorKind::InvariantBreach, "monomial values coincide at level " + level.name());
  return best;
}

}  // namespace

// ---- FieldElement ----

FieldElement::FieldElement(LevelPtr level, std::vector<RatFun> coords) : level_(std::move(level)), c_(std::move(coords)) {
  if (!level_ || c_.size() != static_cast<std::size_t>(level_->total_degree()))
    fail(ErrorKind::InvariantBreach, "coordinate vector does not match level degree");
}

FieldElement FieldElement::zero(const LevelPtr& level) {
  return FieldElement(level, Vec(static_cast<std::size_t>(level->total_degree()), base_zero(level->field())));
}

FieldElement FieldElement::one(const LevelPtr& level) {
  return from_base(level, RatFun::one(level->field().characteristic(), level->field().nvars()));
}

FieldElement FieldElement::from_base(const LevelPtr& level, const RatFun& c) {
  FieldElement e = zero(level);
  e.c_[0] = c;
  return e;
}

FieldElement FieldElement::rational(const LevelPtr& level, const Rat& q) {
  return from_base(level, RatFun::constant(level->field().characteristic(), level->field().nvars(), q));
}

bool FieldElement::is_zero() const { return all_zero(c_, 0, c_.size()); }

bool FieldElement::is_one() const { return c_[0].is_one() && all_zero(c_, 1, c_.size()); }

bool FieldElement::lies_in(const LevelPtr& ancestor) const {
  if (!level_->has_ancestor(ancestor)) return false;
  return all_zero(c_, static_cast<std::size_t>(ancestor->total_degree()), c_.size());
}

FieldElement FieldElement::lifted(const LevelPtr& target) const {
  if (target == level_) return *this;
  if (!target->has_ancestor(level_)) fail(ErrorKind::LevelMismatch, "cannot lift into an unrelated level");
  Vec c = c_;
  c.resize(static_cast<std::size_t>(target->total_degree()), base_zero(level_->field()));
  return FieldElement(target, std::move(c));
}

FieldElement FieldElement::lowered(const LevelPtr& target) const {
  if (target == level_) return *this;
  if (!lies_in(target)) fail(ErrorKind::LevelMismatch, "element does not lie in level " + target->name());
  return FieldElement(target, slice(c_, 0, static_cast<std::size_t>(target->total_degree())));
}

LevelPtr common_level(const LevelPtr& a, const LevelPtr& b) {
  if (a == b) return a;
  if (a->has_ancestor(b)) return a;
  if (b->has_ancestor(a)) return b;
  fail(ErrorKind::LevelMismatch, "levels " + a->name() + " and " + b->name() + " are not nested");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.c_)
    if (!x.is_zero()) x = -x;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.level_ != b.level_) {
    LevelPtr l = common_level(a.level_, b.level_);
    return a.lifted(l) + b.lifted(l);
  }
  FieldElement r = a;
  add_into(r.c_, 0, b.c_);
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.level_ != b.level_) {
    LevelPtr l = common_level(a.level_, b.level_);
    return a.lifted(l) * b.lifted(l);
  }
  if (a.is_zero() || b.is_zero()) return FieldElement::zero(a.level_);
  return FieldElement(a.level_, mul_vec(*a.level_, a.c_, b.c_));
}

bool FieldElement::operator==(const FieldElement& other) const {
  if (level_ != other.level_) {
    LevelPtr l = common_level(level_, other.level_);
    return lifted(l).c_ == other.lifted(l).c_;
  }
  return c_ == other.c_;
}

namespace {

// Multiplies by the generator of the level.
Vec times_generator(const Level& level, const Vec& x) {
  const Level& parent = *level.parent();
  const std::size_t tp = static_cast<std::size_t>(parent.total_degree());
  const std::size_t n = static_cast<std::size_t>(level.degree());
  Vec out(x.size(), base_zero(level.field()));
  for (std::size_t i = 1; i < n; ++i)
    std::copy(x.begin() + static_cast<long>((i - 1) * tp), x.begin() + static_cast<long>(i * tp),
              out.begin() + static_cast<long>(i * tp));
  if (!all_zero(x, (n - 1) * tp, n * tp)) {
    Vec top = slice(x, (n - 1) * tp, tp);
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElement& m = level.minpoly()[i];
      if (!m.is_zero()) sub_into(out, i * tp, mul_vec(parent, top, m.coords()));
    }
  }
  return out;
}

// Solves m * x = e_0 over the base field without intermediate fractions:
// rows are cleared to polynomials, then Bareiss elimination with exact
// division, then back substitution.
Vec solve_unit_over_base(std::vector<std::vector<RatFun>> m) {
  const std::size_t n = m.size();
  const unsigned long p = m[0][0].characteristic();
  const std::size_t nv = m[0][0].nvars();
  const MPoly one = MPoly::constant(p, nv, Coef::one(p));
  std::vector<std::vector<MPoly>> a(n, std::vector<MPoly>(n + 1, MPoly(p, nv)));
  for (std::size_t i = 0; i < n; ++i) {
    MPoly l = one;
    for (std::size_t j = 0; j < n; ++j)
      if (!m[i][j].is_zero() && !m[i][j].den().is_one()) {
        MPoly g = gcd(l, m[i][j].den());
        l = l * m[i][j].den().exact_div(g);
      }
    for (std::size_t j = 0; j < n; ++j)
      if (!m[i][j].is_zero()) a[i][j] = m[i][j].num() * l.exact_div(m[i][j].den());
    if (i == 0) a[i][n] = l;
  }
  MPoly prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) fail(ErrorKind::InvariantBreach, "singular multiplication matrix");
    std::swap(a[k], a[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        MPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = t.is_zero() ? t : t.exact_div(prev);
      }
      a[i][k] = MPoly(p, nv);
    }
    prev = a[k][k];
  }
  if (a[n - 1][n - 1].is_zero()) fail(ErrorKind::InvariantBreach, "singular multiplication matrix");
  // X_i = x_i * det is a polynomial; det is the last Bareiss pivot
  const MPoly& det = a[n - 1][n - 1];
  std::vector<MPoly> big(n, MPoly(p, nv));
  for (std::size_t i = n; i-- > 0;) {
    MPoly acc = a[i][n] * det;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!a[i][j].is_zero() && !big[j].is_zero()) acc = acc - a[i][j] * big[j];
    big[i] = acc.is_zero() ? acc : acc.exact_div(a[i][i]);
  }
  Vec x(n, RatFun::zero(p, nv));
  for (std::size_t i = 0; i < n; ++i)
    if (!big[i].is_zero()) x[i] = RatFun(big[i], det);
  return x;
}

}  // namespace

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (level_->is_base()) return FieldElement(level_, Vec{c_[0].inverse()});
  const LevelPtr& parent = level_->parent();
  const std::size_t tp = static_cast<std::size_t>(parent->total_degree());
  const std::size_t n = static_cast<std::size_t>(level_->degree());
  if (parent->is_base()) {
    std::vector<std::vector<RatFun>> m(n, std::vector<RatFun>(n));
    Vec col = c_;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
      if (j + 1 < n) col = times_generator(*level_, col);
    }
    return FieldElement(level_, solve_unit_over_base(std::move(m)));
  }
  // column j of m holds the parent coordinates of this * a^j
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n + 1));
  Vec col = c_;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = FieldElement(parent, slice(col, i * tp, tp));
    if (j + 1 < n) col = times_generator(*level_, col);
  }
  for (std::size_t i = 0; i < n; ++i) m[i][n] = i == 0 ? FieldElement::one(parent) : FieldElement::zero(parent);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) fail(ErrorKind::InvariantBreach, "singular multiplication matrix");
    std::swap(m[k], m[piv]);
    FieldElement inv = m[k][k].inverse();
    for (std::size_t j = k; j <= n; ++j) m[k][j] = m[k][j] * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k].is_zero()) continue;
      FieldElement f = m[i][k];
      for (std::size_t j = k; j <= n; ++j) m[i][j] = m[i][j] - f * m[k][j];
    }
  }
  Vec out;
  out.reserve(c_.size());
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), m[i][n].coords().begin(), m[i][n].coords().end());
  return FieldElement(level_, std::move(out));
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = one(level_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

GroupValue FieldElement::value() const { return value_vec(*level_, c_); }

Coef FieldElement::residue() const {
  GroupValue v = value();
  if (v.is_infinite() || !v.is_zero()) fail(ErrorKind::NonzeroValue, "residue of an element of value " + v.to_string());
  return base_residue(level_->field(), c_[0]);
}

std::string FieldElement::to_string() const {
  std::vector<LevelPtr> path = level_->path();
  std::vector<std::string> terms;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (c_[idx].is_zero()) continue;
    std::string mono;
    std::size_t rest = idx;
    for (std::size_t k = 1; k < path.size(); ++k) {
      std::size_t n = static_cast<std::size_t>(path[k]->degree());
      std::size_t exp = rest % n;
      rest /= n;
      if (exp == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += path[k]->name();
      if (exp > 1) mono += "^" + std::to_string(exp);
    }
    std::string coef = c_[idx].to_string(level_->field().vars);
    bool single = coef.find(' ') == std::string::npos;
    std::string term;
    if (mono.empty()) term = coef;
    else if (c_[idx].is_one()) term = mono;
    else if (coef == "-1") term = "-" + mono;
    else term = (single ? coef : "(" + coef + ")") + "*" + mono;
    terms.push_back(term);
  }
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-') out += " - " + terms[i].substr(1);
    else out += " + " + terms[i];
  }
  return out;
}

// ---- Level ----

LevelPtr Level::base(BaseField field) {
  auto l = std::shared_ptr<Level>(new Level());
  l->field_ = std::make_shared<const BaseField>(std::move(field));
  l->group_ = SubgroupDesc::integers(l->field_->rank());
  return l;
}

std::vector<LevelPtr> Level::path() const {
  std::vector<LevelPtr> out;
  for (LevelPtr l = self(); l; l = l->parent_) out.push_back(l);
  std::reverse(out.begin(), out.end());
  return out;
}

bool Level::has_ancestor(const LevelPtr& other) const {
  for (const Level* l = this; l; l = l->parent_.get())
    if (l == other.get()) return true;
  return false;
}

const Level* Level::root() const {
  const Level* l = this;
  while (l->parent_) l = l->parent_.get();
  return l;
}

FieldElement Level::generator() const {
  if (is_base()) fail(ErrorKind::Unsupported, "the base level has no generator");
  FieldElement e = FieldElement::zero(self());
  Vec c = e.coords();
  c[static_cast<std::size_t>(parent_->total_degree())] = RatFun::one(field().characteristic(), field().nvars());
  return FieldElement(self(), std::move(c));
}

FieldElement Level::variable(std::size_t index) const {
  if (index >= field().nvars()) fail(ErrorKind::Unsupported, "no such base variable");
  const BaseField& f = field();
  return FieldElement::from_base(self(), RatFun(MPoly::variable(f.characteristic(), f.nvars(), index)));
}

std::vector<std::string> Level::generator_names() const {
  std::vector<std::string> out;
  for (const auto& l : path())
    if (!l->is_base()) out.push_back(l->name());
  return out;
}

LevelPtr construct_extension(const LevelPtr& parent, const std::string& name,
                             const std::vector<FieldElement>& minpoly, const GroupValue& root_value) {
  if (!parent) fail(ErrorKind::InvariantBreach, "extension of a null level");
  if (minpoly.size() < 3) fail(ErrorKind::Unsupported, "extension polynomial must have degree at least 2");
  std::vector<FieldElement> coeffs;
  for (const auto& c : minpoly) {
    if (!parent->has_ancestor(c.level())) {
      if (!c.lies_in(parent)) fail(ErrorKind::LevelMismatch, "coefficient of the polynomial for " + name + " is not in the parent level");
      coeffs.push_back(c.lowered(parent));
    } else {
      coeffs.push_back(c.lifted(parent));
    }
  }
  if (!coeffs.back().is_one()) fail(ErrorKind::NonMonic, "polynomial for " + name + " is not monic");
  if (root_value.is_infinite()) fail(ErrorKind::InconsistentRootValue, "root value must be finite");
  if (root_value.rank() != parent->field().rank()) fail(ErrorKind::RankMismatch, "root value has the wrong rank");
  if (root_value.gcoef() != 0) fail(ErrorKind::InconsistentRootValue, "root value cannot involve gamma");
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<std::pair<int, GroupValue>> points;
  for (int i = 0; i <= n; ++i)
    if (!coeffs[static_cast<std::size_t>(i)].is_zero()) points.push_back({i, coeffs[static_cast<std::size_t>(i)].value()});
  bool is_slope = false;
  for (const auto& seg : lower_hull(points))
    if (seg.slope == root_value) is_slope = true;
  if (!is_slope)
    fail(ErrorKind::InconsistentRootValue, root_value.to_string() + " is not a slope of the Newton polygon of the polynomial for " + name);
  auto order = torsion_order(root_value, parent->value_group());
  if (!order || *order != n)
    fail(ErrorKind::NotTotallyRamified, "value " + root_value.to_string() + " has order " +
                                            (order ? order->get_str() : std::string("infinite")) +
                                            " modulo the value group, degree is " + std::to_string(n));

  auto l = std::shared_ptr<Level>(new Level());
  l->field_ = parent->field_;
  l->parent_ = parent;
  l->depth_ = parent->depth_ + 1;
  l->name_ = name;
  l->degree_ = n;
  l->total_ = parent->total_ * n;
  l->minpoly_ = std::move(coeffs);
  l->root_value_ = root_value;
  l->group_ = parent->group_.with(root_value);
  return l;
}

std::vector<FieldElement> coordinates_over(const FieldElement& e, const LevelPtr& ancestor) {
  if (!e.level()->has_ancestor(ancestor)) fail(ErrorKind::LevelMismatch, "not an ancestor level");
  const std::size_t ta = static_cast<std::size_t>(ancestor->total_degree());
  const std::size_t d = e.coords().size() / ta;
  std::vector<FieldElement> out;
  out.reserve(d);
  for (std::size_t r = 0; r < d; ++r) out.emplace_back(ancestor, slice(e.coords(), r * ta, ta));
  return out;
}

GroupValue artin_schreier_root_value(const FieldElement& c) {
  const BaseField& f = c.level()->field();
  if (f.characteristic() == 0) fail(ErrorKind::CharZero, "Artin-Schreier values need positive characteristic");
  GroupValue v = c.value();
  if (v.is_infinite() || compare(v, GroupValue::zero(v.rank())) != std::strong_ordering::less)
    fail(ErrorKind::NonNegativeValue, "value " + v.to_string() + " is not negative");
  return v.divided(Int(static_cast<unsigned long>(f.characteristic())));
}

int ostrowski_defect(long n, long e, long f, long p) {
  if (n < 1 || e < 1 || f < 1 || p < 1) fail(ErrorKind::Unsupported, "degrees and characteristic exponent must be positive");
  if (n % (e * f) != 0)
    fail(ErrorKind::NotPowerOfCharExponent, std::to_string(e * f) + " does not divide " + std::to_string(n));
  long q = n / (e * f);
  int d = 0;
  if (p == 1) {
    if (q != 1) fail(ErrorKind::NotPowerOfCharExponent, std::to_string(q) + " is not a power of 1");
    return 0;
  }
  while (q % p == 0) {
    q /= p;
    ++d;
  }
  if (q != 1) fail(ErrorKind::NotPowerOfCharExponent, std::to_string(n / (e * f)) + " is not a power of " + std::to_string(p));
  return d;
}

}  // namespace valx
