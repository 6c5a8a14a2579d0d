#pragma once

// Value groups of the form (Q^r, lex) + Z*gamma, plus the formal value of 0.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "valx/error.hpp"

namespace valx {

using Int = mpz_class;
using Rat = mpq_class;

std::string to_string(const Rat& q);
/// Parses "n", "-n/d" (whitespace tolerant). Throws ParseError.
Rat parse_rat(std::string_view text);

using RatVec = std::vector<Rat>;

std::string to_string(const RatVec& v);

/// gamma sits at a rational point of the divisible hull (residue transcendental).
struct RationalPoint {
  RatVec point;
};

/// gamma = q0 + q1*sqrt(d) * e_0: irrational in the leading coordinate only.
/// For rank 1 this is q0 + q1*sqrt(d).
struct QuadIrr {
  RatVec q0;
  Rat q1;
  Int d;
};

/// gamma exceeds every element of the divisible hull of the value group.
struct AboveAll {
  std::size_t rank = 1;
};

class GammaSpec {
 public:
  using Variant = std::variant<RationalPoint, QuadIrr, AboveAll>;

  static GammaSpec rational(RatVec point);
  static GammaSpec quadratic(RatVec q0, Rat q1, Int d);
  static GammaSpec above_all(std::size_t rank);

  const Variant& variant() const { return v_; }
  std::size_t rank() const;
  bool is_rational() const { return std::holds_alternative<RationalPoint>(v_); }
  bool is_above_all() const { return std::holds_alternative<AboveAll>(v_); }

  bool operator==(const GammaSpec& other) const;
  std::string to_string() const;

 private:
  explicit GammaSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// An element of (Q^r, lex) + Z*gamma, or Infinity. Values with a rational
/// gamma are always stored folded (gcoef = 0).
class GroupValue {
 public:
  GroupValue() : inf_(true) {}
  explicit GroupValue(RatVec vec, Int gcoef = 0);

  static GroupValue infinity() { return GroupValue(); }
  static GroupValue zero(std::size_t rank) { return GroupValue(RatVec(rank, Rat(0))); }
  static GroupValue scalar(const Rat& q) { return GroupValue(RatVec{q}); }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  std::size_t rank() const { return vec_.size(); }
  const RatVec& vec() const { return vec_; }
  const Int& gcoef() const { return gcoef_; }
  bool is_zero() const;

  GroupValue operator-() const;
  GroupValue scaled(const Int& n) const;
  /// Exact division by a positive integer; gcoef must be divisible by n.
  GroupValue divided(const Int& n) const;

  friend GroupValue operator+(const GroupValue& a, const GroupValue& b);
  friend GroupValue operator-(const GroupValue& a, const GroupValue& b);
  GroupValue& operator+=(const GroupValue& b) { return *this = *this + b; }

  bool operator==(const GroupValue& other) const;

  std::string to_string() const;

 private:
  bool inf_ = false;
  RatVec vec_;
  Int gcoef_;
};

/// The value of gamma itself under a spec (folded when rational).
GroupValue gamma_value(const GammaSpec& spec);

/// Total order on values under the given gamma regime.
std::strong_ordering cmp(const GroupValue& v, const GroupValue& w, const GammaSpec& spec);

/// Order for values with equal gamma coefficients (all tower values). Throws
/// GammaUnresolved otherwise.
std::strong_ordering compare(const GroupValue& v, const GroupValue& w);

const GroupValue& min_value(const GroupValue& v, const GroupValue& w, const GammaSpec& spec);
const GroupValue& max_value(const GroupValue& v, const GroupValue& w, const GammaSpec& spec);

/// Parses the rendering produced by GroupValue::to_string.
GroupValue parse_group_value(std::string_view text);
/// Parses "q" or "(q1,...,qr)".
RatVec parse_rat_vec(std::string_view text);

/// Subgroup of Q^r generated by finitely many rational vectors.
class SubgroupDesc {
 public:
  SubgroupDesc() = default;
  SubgroupDesc(std::size_t rank, std::vector<RatVec> generators);

  /// Z^r with the standard basis.
  static SubgroupDesc integers(std::size_t rank);

  std::size_t rank() const { return rank_; }
  const std::vector<RatVec>& generators() const { return gens_; }
  /// Echelon basis (unique Hermite normal form of the scaled lattice).
  const std::vector<RatVec>& basis() const { return basis_; }

  bool contains(const GroupValue& v) const;
  SubgroupDesc with(const GroupValue& v) const;

  bool operator==(const SubgroupDesc& other) const { return rank_ == other.rank_ && basis_ == other.basis_; }

  /// "(1/3)Z" in rank one, "Z*(1,0) + Z*(0,1/9)" otherwise.
  std::string to_string() const;

  /// Coordinates of v in the echelon basis, if v lies in the Q-span.
  std::optional<RatVec> coordinates(const RatVec& v) const;

 private:
  std::size_t rank_ = 0;
  std::vector<RatVec> gens_;
  std::vector<RatVec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Least e >= 1 with e*v in H, or nullopt when v is not torsion modulo H.
std::optional<Int> torsion_order(const GroupValue& v, const SubgroupDesc& h);

}  // namespace valx
