#include "valx/ratfun.hpp"

#include <algorithm>

namespace valx {

namespace {

long mod_reduce(const Int& v, unsigned long p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<long>(r.get_ui());
}

long mod_inverse(long a, unsigned long p) {
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p), new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) fail(ErrorKind::DivisionByZero, "non-invertible residue mod " + std::to_string(p));
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<long>(t);
}

void same_char(const Coef& a, const Coef& b) {
  if (a.characteristic() != b.characteristic())
    fail(ErrorKind::InvariantBreach, "mixing coefficient fields of different characteristic");
}

}  // namespace

// ---- Coef ----

Coef::Coef(unsigned long characteristic, long value) : p_(characteristic) {
  if (p_ == 0) v_ = Rat(value);
  else v_ = mod_reduce(Int(value), p_);
}

Coef::Coef(unsigned long characteristic, const Rat& value) : p_(characteristic) {
  if (p_ == 0) {
    v_ = value;
    return;
  }
  long num = mod_reduce(value.get_num(), p_);
  long den = mod_reduce(value.get_den(), p_);
  if (den == 0)
    fail(ErrorKind::DivisionByZero,
         "denominator of " + valx::to_string(value) + " vanishes in F_" + std::to_string(p_));
  v_ = static_cast<long>((static_cast<__int128>(num) * mod_inverse(den, p_)) % static_cast<__int128>(p_));
}

bool Coef::is_zero() const {
  if (p_ == 0) return std::get<Rat>(v_) == 0;
  return std::get<long>(v_) == 0;
}

bool Coef::is_one() const {
  if (p_ == 0) return std::get<Rat>(v_) == 1;
  return std::get<long>(v_) == 1;
}

Rat Coef::to_rat() const {
  if (p_ == 0) return std::get<Rat>(v_);
  return Rat(std::get<long>(v_));
}

Coef Coef::operator-() const {
  Coef r = *this;
  if (p_ == 0) r.v_ = Rat(-std::get<Rat>(v_));
  else {
    long v = std::get<long>(v_);
    r.v_ = v == 0 ? 0L : static_cast<long>(p_) - v;
  }
  return r;
}

Coef Coef::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  Coef r = *this;
  if (p_ == 0) r.v_ = Rat(1 / std::get<Rat>(v_));
  else r.v_ = mod_inverse(std::get<long>(v_), p_);
  return r;
}

Coef operator+(const Coef& a, const Coef& b) {
  same_char(a, b);
  Coef r = a;
  if (a.p_ == 0) r.v_ = Rat(std::get<Rat>(a.v_) + std::get<Rat>(b.v_));
  else r.v_ = static_cast<long>((std::get<long>(a.v_) + std::get<long>(b.v_)) % static_cast<long>(a.p_));
  return r;
}

Coef operator-(const Coef& a, const Coef& b) { return a + (-b); }

Coef operator*(const Coef& a, const Coef& b) {
  same_char(a, b);
  Coef r = a;
  if (a.p_ == 0) r.v_ = Rat(std::get<Rat>(a.v_) * std::get<Rat>(b.v_));
  else
    r.v_ = static_cast<long>((static_cast<__int128>(std::get<long>(a.v_)) * std::get<long>(b.v_)) %
                             static_cast<__int128>(a.p_));
  return r;
}

bool Coef::operator==(const Coef& other) const { return p_ == other.p_ && v_ == other.v_; }

std::string Coef::to_string() const { return valx::to_string(to_rat()); }

// ---- Monomial ----

Monomial Monomial::operator+(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

Monomial Monomial::operator-(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

// ---- MPoly ----

MPoly MPoly::from_terms(unsigned long characteristic, std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  MPoly out(characteristic, nvars);
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second = out.terms_.back().second + t.second;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

MPoly MPoly::constant(unsigned long characteristic, std::size_t nvars, const Coef& c) {
  MPoly out(characteristic, nvars);
  if (!c.is_zero()) out.terms_.push_back({Monomial{}, c});
  return out;
}

MPoly MPoly::variable(unsigned long characteristic, std::size_t nvars, std::size_t index) {
  if (index >= nvars) fail(ErrorKind::InvariantBreach, "variable index out of range");
  Monomial m;
  m.e[index] = 1;
  MPoly out(characteristic, nvars);
  out.terms_.push_back({m, Coef::one(characteristic)});
  return out;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{}); }

bool MPoly::is_one() const { return terms_.size() == 1 && terms_[0].first == Monomial{} && terms_[0].second.is_one(); }

int MPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[var]));
  return d;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.p_ != b.p_ || a.n_ != b.n_) fail(ErrorKind::InvariantBreach, "mixing polynomial rings");
  MPoly out(a.p_, a.n_);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      Coef c = a.terms_[i].second + b.terms_[j].second;
      if (!c.is_zero()) out.terms_.push_back({a.terms_[i].first, c});
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.p_ != b.p_ || a.n_ != b.n_) fail(ErrorKind::InvariantBreach, "mixing polynomial rings");
  if (a.is_zero() || b.is_zero()) return MPoly(a.p_, a.n_);
  std::vector<MPoly::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) terms.push_back({ma + mb, ca * cb});
  return MPoly::from_terms(a.p_, a.n_, std::move(terms));
}

MPoly MPoly::scaled(const Coef& c) const {
  if (c.is_zero()) return MPoly(p_, n_);
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = t.second * c;
  return r;
}

MPoly MPoly::shifted(const Monomial& m) const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.first = t.first + m;
  return r;
}

MPoly MPoly::exact_div(const MPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  MPoly q(p_, n_);
  MPoly r = *this;
  const auto& [ld, cd] = d.leading();
  Coef inv = cd.inverse();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    if (!ld.divides(lr)) fail(ErrorKind::InvariantBreach, "inexact multivariate division");
    Term t{lr - ld, cr * inv};
    qterms.push_back(t);
    MPoly step = d.shifted(t.first).scaled(t.second);
    r = r - step;
  }
  return from_terms(p_, n_, std::move(qterms));
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().second.inverse());
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat q = c.to_rat();
    bool negative = q < 0;
    if (negative) q = -q;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t v = 0; v < n_; ++v) {
      if (m.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(v);
      if (m.e[v] != 1) mono += "^" + std::to_string(m.e[v]);
    }
    if (mono.empty()) out += valx::to_string(q);
    else if (q == 1) out += mono;
    else out += valx::to_string(q) + "*" + mono;
  }
  return out;
}

// ---- gcd ----

namespace {

// Coefficient of var^k, as a polynomial not involving var.
MPoly coefficient_in(const MPoly& f, std::size_t var, int k) {
  std::vector<MPoly::Term> terms;
  for (const auto& [m, c] : f.terms())
    if (m.e[var] == k) {
      Monomial mm = m;
      mm.e[var] = 0;
      terms.push_back({mm, c});
    }
  return MPoly::from_terms(f.characteristic(), f.nvars(), std::move(terms));
}

MPoly var_power(const MPoly& like, std::size_t var, int k) {
  Monomial m;
  m.e[var] = k;
  return MPoly::from_terms(like.characteristic(), like.nvars(), {{m, Coef::one(like.characteristic())}});
}

MPoly gcd_from(const MPoly& a, const MPoly& b, std::size_t var);

MPoly content_in(const MPoly& f, std::size_t var) {
  MPoly g(f.characteristic(), f.nvars());
  int d = f.degree_in(var);
  for (int k = d; k >= 0; --k) {
    MPoly c = coefficient_in(f, var, k);
    if (c.is_zero()) continue;
    g = gcd_from(g, c, var + 1);
    if (g.is_one()) break;
  }
  return g;
}

MPoly pseudo_remainder(MPoly r, const MPoly& b, std::size_t var) {
  int db = b.degree_in(var);
  MPoly lcb = coefficient_in(b, var, db);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    MPoly lcr = coefficient_in(r, var, dr);
    r = lcb * r - lcr * var_power(r, var, dr - db) * b;
  }
  return r;
}

MPoly gcd_from(const MPoly& a, const MPoly& b, std::size_t var) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto one = MPoly::constant(a.characteristic(), a.nvars(), Coef::one(a.characteristic()));
  if (a.is_constant() || b.is_constant()) return one;
  // skip variables that neither input involves
  while (var < a.nvars() && a.degree_in(var) == 0 && b.degree_in(var) == 0) ++var;
  if (var >= a.nvars()) return one;

  MPoly ca = content_in(a, var), cb = content_in(b, var);
  MPoly c = gcd_from(ca, cb, var + 1);
  MPoly pa = a.exact_div(ca).monic(), pb = b.exact_div(cb).monic();
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.degree_in(var) == 0) {
      pa = one;
      break;
    }
    MPoly r = pseudo_remainder(pa, pb, var);
    pa = std::move(pb);
    if (r.is_zero()) break;
    pb = r.exact_div(content_in(r, var)).monic();
  }
  return (c * pa).monic();
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  // a monomial shares only a monomial with anything
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    Monomial m = a.terms().front().first;
    for (const auto* f : {&a, &b})
      for (const auto& [mm, c] : f->terms())
        for (std::size_t v = 0; v < kMaxVars; ++v) m.e[v] = std::min(m.e[v], mm.e[v]);
    return MPoly::from_terms(a.characteristic(), a.nvars(), {{m, Coef::one(a.characteristic())}});
  }
  return gcd_from(a, b, 0);
}

// ---- RatFun ----

RatFun::RatFun(MPoly num)
    : num_(std::move(num)),
      den_(MPoly::constant(num_.characteristic(), num_.nvars(), Coef::one(num_.characteristic()))) {}

RatFun::RatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
  normalize();
}

RatFun RatFun::zero(unsigned long characteristic, std::size_t nvars) {
  return RatFun(MPoly(characteristic, nvars));
}

RatFun RatFun::one(unsigned long characteristic, std::size_t nvars) {
  return RatFun(MPoly::constant(characteristic, nvars, Coef::one(characteristic)));
}

RatFun RatFun::constant(unsigned long characteristic, std::size_t nvars, const Rat& q) {
  return RatFun(MPoly::constant(characteristic, nvars, Coef(characteristic, q)));
}

void RatFun::normalize() {
  const unsigned long p = num_.characteristic();
  if (num_.is_zero()) {
    den_ = MPoly::constant(p, num_.nvars(), Coef::one(p));
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  Coef lead = den_.leading().second;
  if (!lead.is_one()) {
    Coef inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  return RatFun(den_, num_);
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_.is_one() && b.den_.is_one()) return RatFun(a.num_ + b.num_);
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun::zero(a.characteristic(), a.nvars());
  if (a.den_.is_one() && b.den_.is_one()) return RatFun(a.num_ * b.num_);
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

std::string RatFun::to_string(const std::vector<std::string>& names) const {
  if (den_.is_one()) return num_.to_string(names);
  auto wrap = [&](const MPoly& f) {
    std::string s = f.to_string(names);
    bool simple = f.terms().size() == 1 && s.find('*') == std::string::npos && s.find('/') == std::string::npos &&
                  s[0] != '-';
    return simple ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace valx
