#pragma once

// Dense univariate polynomials over a tower level.

#include <utility>
#include <vector>

#include "valx/field_tower.hpp"

namespace valx {

class Poly {
 public:
  Poly() = default;
  /// Coefficients low to high; trailing zeros are dropped.
  Poly(LevelPtr level, std::vector<FieldElement> coeffs);

  static Poly zero(const LevelPtr& level) { return Poly(level, {}); }
  static Poly constant(const FieldElement& c);
  /// x - a
  static Poly linear(const FieldElement& a);
  /// x^k
  static Poly monomial(const LevelPtr& level, int k);

  const LevelPtr& level() const { return level_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  FieldElement coeff(int i) const;
  const FieldElement& leading() const { return c_.back(); }

  Poly lifted(const LevelPtr& target) const;
  Poly lowered(const LevelPtr& target) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const FieldElement& c) const;
  Poly pow(int e) const;
  bool operator==(const Poly& other) const;

  FieldElement eval(const FieldElement& a) const;
  Poly derivative() const;
  /// Polynomial g with g(x^k) = this; requires every exponent divisible by k.
  Poly deflated(int k) const;
  Poly monic() const;

  /// Uses "x" for the indeterminate.
  std::string to_string() const;

 private:
  void trim();
  LevelPtr level_;
  std::vector<FieldElement> c_;
};

/// Division with remainder by a monic divisor.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
/// Monic gcd (division by leading coefficients is allowed here).
Poly gcd(const Poly& f, const Poly& g);
bool is_separable(const Poly& f);

/// [c_0..c_n] with f = sum c_i (x-a)^i, by repeated synthetic division.
std::vector<FieldElement> taylor_expand(const Poly& f, const FieldElement& a);
/// Reassembles sum c_i (x-a)^i.
Poly taylor_reconstruct(const std::vector<FieldElement>& c, const FieldElement& a);

/// [f_0..f_r] with f = sum f_i Q^i and deg f_i < deg Q.
std::vector<Poly> q_expand(const Poly& f, const Poly& q);
Poly q_reconstruct(const std::vector<Poly>& parts, const Poly& q);

/// Monic minimal polynomial of e over the ancestor level, by linear algebra.
Poly minimal_polynomial(const FieldElement& e, const LevelPtr& over);

}  // namespace valx
