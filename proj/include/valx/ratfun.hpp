#pragma once

// Coefficient fields (Q or F_p), sparse multivariate polynomials over them and
// rational functions in lowest terms. A rational function field in zero
// variables is the coefficient field itself, which is how Q is represented
// for p-adic base fields.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "valx/valgroup.hpp"

namespace valx {

/// Element of Q (characteristic 0) or F_p.
class Coef {
 public:
  Coef() = default;
  Coef(unsigned long characteristic, long value);
  Coef(unsigned long characteristic, const Rat& value);

  static Coef zero(unsigned long characteristic) { return Coef(characteristic, 0L); }
  static Coef one(unsigned long characteristic) { return Coef(characteristic, 1L); }

  unsigned long characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;

  /// Rational value (a representative in [0, p) for F_p).
  Rat to_rat() const;

  Coef operator-() const;
  Coef inverse() const;
  friend Coef operator+(const Coef& a, const Coef& b);
  friend Coef operator-(const Coef& a, const Coef& b);
  friend Coef operator*(const Coef& a, const Coef& b);
  friend Coef operator/(const Coef& a, const Coef& b) { return a * b.inverse(); }
  bool operator==(const Coef& other) const;

  std::string to_string() const;

 private:
  unsigned long p_ = 0;
  std::variant<long, Rat> v_ = 0L;  // long when p_ > 0
};

inline constexpr std::size_t kMaxVars = 4;

/// Exponent vector; compared lexicographically with the first variable most
/// significant, which is also the order of the monomial valuation.
struct Monomial {
  std::array<std::int32_t, kMaxVars> e{};

  auto operator<=>(const Monomial&) const = default;
  Monomial operator+(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator-(const Monomial& o) const;
};

/// Sparse polynomial in a fixed number of variables, terms sorted by monomial.
class MPoly {
 public:
  using Term = std::pair<Monomial, Coef>;

  MPoly() = default;
  MPoly(unsigned long characteristic, std::size_t nvars) : p_(characteristic), n_(nvars) {}

  static MPoly constant(unsigned long characteristic, std::size_t nvars, const Coef& c);
  static MPoly variable(unsigned long characteristic, std::size_t nvars, std::size_t index);

  unsigned long characteristic() const { return p_; }
  std::size_t nvars() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Lex-smallest monomial, i.e. the monomial valuation. Requires nonzero.
  const Term& lowest() const { return terms_.front(); }
  /// Lex-largest monomial.
  const Term& leading() const { return terms_.back(); }
  int degree_in(std::size_t var) const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const Coef& c) const;
  MPoly shifted(const Monomial& m) const;
  bool operator==(const MPoly& other) const { return terms_ == other.terms_; }

  /// Exact quotient; throws InvariantBreach when the division is not exact.
  MPoly exact_div(const MPoly& d) const;
  /// Divides by the leading coefficient.
  MPoly monic() const;

  std::string to_string(const std::vector<std::string>& names) const;

  static MPoly from_terms(unsigned long characteristic, std::size_t nvars, std::vector<Term> terms);

 private:
  unsigned long p_ = 0;
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

MPoly gcd(const MPoly& a, const MPoly& b);

/// Quotient of polynomials in lowest terms, denominator with leading
/// coefficient 1.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(MPoly num);
  RatFun(MPoly num, MPoly den);

  static RatFun zero(unsigned long characteristic, std::size_t nvars);
  static RatFun one(unsigned long characteristic, std::size_t nvars);
  static RatFun constant(unsigned long characteristic, std::size_t nvars, const Rat& q);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  unsigned long characteristic() const { return num_.characteristic(); }
  std::size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFun operator-() const;
  RatFun inverse() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
  bool operator==(const RatFun& other) const { return num_ == other.num_ && den_ == other.den_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void normalize();
  MPoly num_;
  MPoly den_;
};

}  // namespace valx
