#include "valx/valgroup.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace valx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NonIntegralGammaDivision: return "NonIntegralGammaDivision";
    case ErrorKind::GammaUnresolved: return "GammaUnresolved";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotTotallyRamified: return "NotTotallyRamified";
    case ErrorKind::InconsistentRootValue: return "InconsistentRootValue";
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::NonzeroValue: return "NonzeroValue";
    case ErrorKind::NonNegativeValue: return "NonNegativeValue";
    case ErrorKind::CharZero: return "CharZero";
    case ErrorKind::NotPowerOfCharExponent: return "NotPowerOfCharExponent";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonMonicQ: return "NonMonicQ";
    case ErrorKind::NonMonicDivisor: return "NonMonicDivisor";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::Inseparable: return "Inseparable";
    case ErrorKind::DegreeOne: return "DegreeOne";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::IncomparableSpecs: return "IncomparableSpecs";
    case ErrorKind::NotMinimalAsserted: return "NotMinimalAsserted";
    case ErrorKind::NotHenselianContext: return "NotHenselianContext";
    case ErrorKind::BrokenMonotonicity: return "BrokenMonotonicity";
    case ErrorKind::NotCoincident: return "NotCoincident";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UseBeforeDecl: return "UseBeforeDecl";
    case ErrorKind::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

int sign(const Rat& q) { return sgn(q); }

void require_same_rank(const GroupValue& a, const GroupValue& b) {
  if (a.is_finite() && b.is_finite() && a.rank() != b.rank())
    fail(ErrorKind::RankMismatch,
         "values of rank " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
}

// Sign of A + B*sqrt(d), d a positive nonsquare.
int sign_quadratic(const Rat& a, const Rat& b, const Int& d) {
  int sa = sign(a), sb = sign(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rat lhs = a * a;
  Rat rhs = b * b * Rat(d);
  // |A| vs |B|sqrt(d); equality is impossible for nonsquare d
  return lhs > rhs ? sa : sb;
}

int lex_sign(const RatVec& v) {
  for (const auto& q : v)
    if (int s = sign(q)) return s;
  return 0;
}

std::strong_ordering from_sign(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool is_perfect_square(const Int& d) { return mpz_perfect_square_p(d.get_mpz_t()) != 0; }

}  // namespace

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(std::string_view text) {
  std::string s = strip_spaces(text);
  auto bad = [&] { fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) bad();
  if (num[0] == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const RatVec& v) {
  if (v.size() == 1) return to_string(v[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

RatVec parse_rat_vec(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty value");
  if (s.front() != '(') return {parse_rat(s)};
  if (s.back() != ')') fail(ErrorKind::ParseError, "unterminated vector '" + s + "'");
  RatVec out;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  if (out.empty()) fail(ErrorKind::ParseError, "empty vector");
  return out;
}

// ---- GammaSpec ----

GammaSpec GammaSpec::rational(RatVec point) {
  if (point.empty()) fail(ErrorKind::RankMismatch, "gamma needs rank >= 1");
  return GammaSpec(RationalPoint{std::move(point)});
}

GammaSpec GammaSpec::quadratic(RatVec q0, Rat q1, Int d) {
  if (q0.empty()) fail(ErrorKind::RankMismatch, "gamma needs rank >= 1");
  if (q1 == 0) fail(ErrorKind::Unsupported, "quadratic gamma needs q1 != 0");
  if (d <= 0 || is_perfect_square(d))
    fail(ErrorKind::Unsupported, "quadratic gamma needs a positive nonsquare d, got " + d.get_str());
  return GammaSpec(QuadIrr{std::move(q0), std::move(q1), std::move(d)});
}

GammaSpec GammaSpec::above_all(std::size_t rank) {
  if (rank == 0) fail(ErrorKind::RankMismatch, "gamma needs rank >= 1");
  return GammaSpec(AboveAll{rank});
}

std::size_t GammaSpec::rank() const {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RationalPoint>) return g.point.size();
        else if constexpr (std::is_same_v<T, QuadIrr>) return g.q0.size();
        else return g.rank;
      },
      v_);
}

bool GammaSpec::operator==(const GammaSpec& other) const {
  if (v_.index() != other.v_.index()) return false;
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        const auto& h = std::get<T>(other.v_);
        if constexpr (std::is_same_v<T, RationalPoint>) return g.point == h.point;
        else if constexpr (std::is_same_v<T, QuadIrr>) return g.q0 == h.q0 && g.q1 == h.q1 && g.d == h.d;
        else return g.rank == h.rank;
      },
      v_);
}

std::string GammaSpec::to_string() const {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RationalPoint>) return "rational " + valx::to_string(g.point);
        else if constexpr (std::is_same_v<T, QuadIrr>)
          return "quadirr " + valx::to_string(g.q0) + " " + valx::to_string(g.q1) + " " + g.d.get_str();
        else return g.rank == 1 ? std::string("aboveall") : "aboveall " + std::to_string(g.rank);
      },
      v_);
}

// ---- GroupValue ----

GroupValue::GroupValue(RatVec vec, Int gcoef) : inf_(false), vec_(std::move(vec)), gcoef_(std::move(gcoef)) {}

bool GroupValue::is_zero() const { return !inf_ && gcoef_ == 0 && lex_sign(vec_) == 0; }

GroupValue GroupValue::operator-() const {
  if (inf_) fail(ErrorKind::InvariantBreach, "negation of the infinite value");
  RatVec v = vec_;
  for (auto& q : v) q = -q;
  return GroupValue(std::move(v), -gcoef_);
}

GroupValue GroupValue::scaled(const Int& n) const {
  if (inf_) {
    if (n <= 0) fail(ErrorKind::InvariantBreach, "non-positive multiple of the infinite value");
    return *this;
  }
  RatVec v = vec_;
  for (auto& q : v) q *= n;
  return GroupValue(std::move(v), gcoef_ * n);
}

GroupValue GroupValue::divided(const Int& n) const {
  if (n <= 0) fail(ErrorKind::InvariantBreach, "division of a value by a non-positive integer");
  if (inf_) return *this;
  if (gcoef_ % n != 0)
    fail(ErrorKind::NonIntegralGammaDivision,
         "gamma coefficient " + gcoef_.get_str() + " is not divisible by " + n.get_str());
  RatVec v = vec_;
  for (auto& q : v) q /= n;
  return GroupValue(std::move(v), gcoef_ / n);
}

GroupValue operator+(const GroupValue& a, const GroupValue& b) {
  if (a.inf_ || b.inf_) return GroupValue::infinity();
  require_same_rank(a, b);
  RatVec v = a.vec_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.vec_[i];
  return GroupValue(std::move(v), a.gcoef_ + b.gcoef_);
}

GroupValue operator-(const GroupValue& a, const GroupValue& b) {
  if (b.inf_) fail(ErrorKind::InvariantBreach, "subtraction of the infinite value");
  return a + (-b);
}

bool GroupValue::operator==(const GroupValue& other) const {
  if (inf_ || other.inf_) return inf_ == other.inf_;
  return vec_ == other.vec_ && gcoef_ == other.gcoef_;
}

std::string GroupValue::to_string() const {
  if (inf_) return "inf";
  std::string out = valx::to_string(vec_);
  if (gcoef_ > 0) out += "+" + gcoef_.get_str() + "*gamma";
  else if (gcoef_ < 0) out += "-" + Int(-gcoef_).get_str() + "*gamma";
  return out;
}

GroupValue parse_group_value(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s == "inf") return GroupValue::infinity();
  const std::string suffix = "*gamma";
  if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    std::string head = s.substr(0, s.size() - suffix.size());
    // the sign that separates the vector part from the gamma coefficient
    std::size_t pos = std::string::npos;
    int depth = 0;
    for (std::size_t i = 0; i < head.size(); ++i) {
      char c = head[i];
      if (c == '(') ++depth;
      else if (c == ')') --depth;
      else if ((c == '+' || c == '-') && depth == 0 && i > 0 && head[i - 1] != '/') pos = i;
    }
    if (pos == std::string::npos) fail(ErrorKind::ParseError, "malformed gamma term in '" + s + "'");
    RatVec vec = parse_rat_vec(head.substr(0, pos));
    Rat k = parse_rat(head.substr(pos));
    if (k.get_den() != 1) fail(ErrorKind::NonIntegralGammaDivision, "gamma coefficient must be an integer");
    return GroupValue(std::move(vec), k.get_num());
  }
  return GroupValue(parse_rat_vec(s));
}

GroupValue gamma_value(const GammaSpec& spec) {
  if (const auto* r = std::get_if<RationalPoint>(&spec.variant())) return GroupValue(r->point);
  return GroupValue(RatVec(spec.rank(), Rat(0)), 1);
}

std::strong_ordering cmp(const GroupValue& v, const GroupValue& w, const GammaSpec& spec) {
  if (v.is_infinite() || w.is_infinite()) {
    if (v.is_infinite() && w.is_infinite()) return std::strong_ordering::equal;
    return v.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  require_same_rank(v, w);
  if (v.rank() != spec.rank())
    fail(ErrorKind::RankMismatch, "value rank " + std::to_string(v.rank()) + " vs gamma rank " +
                                      std::to_string(spec.rank()));
  RatVec dv(v.rank());
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = v.vec()[i] - w.vec()[i];
  Int dg = v.gcoef() - w.gcoef();
  const auto& g = spec.variant();
  if (const auto* r = std::get_if<RationalPoint>(&g)) {
    for (std::size_t i = 0; i < dv.size(); ++i) dv[i] += Rat(dg) * r->point[i];
    return from_sign(lex_sign(dv));
  }
  if (std::holds_alternative<AboveAll>(g)) {
    if (dg != 0) return from_sign(sgn(dg));
    return from_sign(lex_sign(dv));
  }
  const auto& q = std::get<QuadIrr>(g);
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] += Rat(dg) * q.q0[i];
  int lead = sign_quadratic(dv[0], Rat(dg) * q.q1, q.d);
  if (lead != 0) return from_sign(lead);
  return from_sign(lex_sign(dv));
}

std::strong_ordering compare(const GroupValue& v, const GroupValue& w) {
  if (v.is_infinite() || w.is_infinite()) {
    if (v.is_infinite() && w.is_infinite()) return std::strong_ordering::equal;
    return v.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  require_same_rank(v, w);
  if (v.gcoef() != w.gcoef())
    fail(ErrorKind::GammaUnresolved, "comparison of " + v.to_string() + " and " + w.to_string() +
                                         " needs a gamma spec");
  RatVec dv(v.rank());
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = v.vec()[i] - w.vec()[i];
  return from_sign(lex_sign(dv));
}

const GroupValue& min_value(const GroupValue& v, const GroupValue& w, const GammaSpec& spec) {
  return cmp(w, v, spec) < 0 ? w : v;
}

const GroupValue& max_value(const GroupValue& v, const GroupValue& w, const GammaSpec& spec) {
  return cmp(w, v, spec) > 0 ? w : v;
}

// ---- SubgroupDesc ----

namespace {

Int lcm_of_denominators(const std::vector<RatVec>& rows) {
  Int l = 1;
  for (const auto& r : rows)
    for (const auto& q : r) l = lcm(l, Int(q.get_den()));
  return l;
}

using IntMat = std::vector<std::vector<Int>>;

// Row-style Hermite normal form; returns nonzero rows and pivot columns.
IntMat hermite(IntMat m, std::size_t cols, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols && k < m.size(); ++c) {
    // gcd-eliminate column c below row k
    for (std::size_t i = k + 1; i < m.size(); ++i) {
      while (m[i][c] != 0) {
        if (m[k][c] == 0 || abs(m[i][c]) < abs(m[k][c])) {
          std::swap(m[k], m[i]);
          continue;
        }
        Int q = m[k][c] == 0 ? Int(0) : Int(m[i][c] / m[k][c]);
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[k][j];
      }
    }
    if (m[k][c] == 0) continue;
    if (m[k][c] < 0)
      for (auto& x : m[k]) x = -x;
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < k; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[k][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[k][j];
    }
    pivots.push_back(c);
    ++k;
  }
  m.resize(k);
  return m;
}

}  // namespace

SubgroupDesc::SubgroupDesc(std::size_t rank, std::vector<RatVec> generators)
    : rank_(rank), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.size() != rank_) fail(ErrorKind::RankMismatch, "generator rank mismatch");
  Int scale = lcm_of_denominators(gens_);
  IntMat m;
  for (const auto& g : gens_) {
    std::vector<Int> row;
    for (const auto& q : g) row.push_back(Int(q * scale));
    m.push_back(std::move(row));
  }
  IntMat h = hermite(std::move(m), rank_, pivots_);
  for (const auto& row : h) {
    RatVec r;
    for (const auto& x : row) {
      Rat q(x, scale);
      q.canonicalize();
      r.push_back(q);
    }
    basis_.push_back(std::move(r));
  }
}

SubgroupDesc SubgroupDesc::integers(std::size_t rank) {
  std::vector<RatVec> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    RatVec e(rank, Rat(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return SubgroupDesc(rank, std::move(gens));
}

std::optional<RatVec> SubgroupDesc::coordinates(const RatVec& v) const {
  if (v.size() != rank_) fail(ErrorKind::RankMismatch, "vector rank mismatch");
  RatVec t = v;
  RatVec coords;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    std::size_t c = pivots_[k];
    Rat ck = t[c] / basis_[k][c];
    for (std::size_t j = 0; j < rank_; ++j) t[j] -= ck * basis_[k][j];
    coords.push_back(ck);
  }
  if (lex_sign(t) != 0) return std::nullopt;
  return coords;
}

bool SubgroupDesc::contains(const GroupValue& v) const {
  auto e = torsion_order(v, *this);
  return e && *e == 1;
}

SubgroupDesc SubgroupDesc::with(const GroupValue& v) const {
  if (!v.is_finite() || v.gcoef() != 0) fail(ErrorKind::Unsupported, "only rational values extend a lattice");
  auto gens = gens_;
  gens.push_back(v.vec());
  return SubgroupDesc(rank_, std::move(gens));
}

std::string SubgroupDesc::to_string() const {
  if (basis_.empty()) return "0";
  if (rank_ == 1) {
    const Rat& g = basis_[0][0];
    return g == 1 ? std::string("Z") : "(" + valx::to_string(g) + ")Z";
  }
  std::string out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += " + ";
    out += "Z*" + valx::to_string(basis_[i]);
  }
  return out;
}

std::optional<Int> torsion_order(const GroupValue& v, const SubgroupDesc& h) {
  if (!v.is_finite()) fail(ErrorKind::InvariantBreach, "torsion order of the infinite value");
  if (v.rank() != h.rank()) fail(ErrorKind::RankMismatch, "value rank differs from subgroup rank");
  if (v.gcoef() != 0) return std::nullopt;
  auto coords = h.coordinates(v.vec());
  if (!coords) return std::nullopt;
  Int e = 1;
  for (const auto& c : *coords) e = lcm(e, Int(c.get_den()));
  return e;
}

}  // namespace valx
