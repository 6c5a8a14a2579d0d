#pragma once

// Base valued fields and towers of totally ramified monomial extensions.
//
// An element of a level of total degree T over the base is a flat vector of
// T base coefficients. Level k with generator a_k of degree n_k over level
// k-1 stores its element as n_k consecutive blocks of T_{k-1} coordinates,
// block j being the coefficient of a_k^j. Elements of an ancestor level
// embed by zero padding.

#include <memory>
#include <string>
#include <vector>

#include "valx/ratfun.hpp"
#include "valx/valgroup.hpp"

namespace valx {

enum class BaseKind { PAdic, RationalFunctions };

struct BaseField {
  BaseKind kind = BaseKind::PAdic;
  /// p for the p-adic rationals; coefficient characteristic (0 or p) for K = k(vars).
  unsigned long prime = 0;
  std::vector<std::string> vars;
  bool henselian = false;

  static BaseField padic(unsigned long p);
  static BaseField rational_functions(unsigned long coefficient_characteristic, std::vector<std::string> vars);

  unsigned long characteristic() const { return kind == BaseKind::PAdic ? 0 : prime; }
  /// Characteristic exponent of the residue field (1 for residue field Q).
  unsigned long residue_char_exponent() const { return kind == BaseKind::PAdic ? prime : (prime == 0 ? 1 : prime); }
  std::size_t rank() const { return kind == BaseKind::PAdic ? 1 : vars.size(); }
  std::size_t nvars() const { return kind == BaseKind::PAdic ? 0 : vars.size(); }
  /// "F3", "Q".
  std::string residue_field_name() const;
  std::string to_string() const;
};

class Level;
using LevelPtr = std::shared_ptr<const Level>;
class FieldElement;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(LevelPtr level, std::vector<RatFun> coords);

  static FieldElement zero(const LevelPtr& level);
  static FieldElement one(const LevelPtr& level);
  static FieldElement from_base(const LevelPtr& level, const RatFun& c);
  static FieldElement rational(const LevelPtr& level, const Rat& q);

  const LevelPtr& level() const { return level_; }
  const std::vector<RatFun>& coords() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in the given ancestor level (all higher coordinates zero).
  bool lies_in(const LevelPtr& ancestor) const;

  /// Same element viewed at a descendant level.
  FieldElement lifted(const LevelPtr& target) const;
  /// Same element viewed at an ancestor level; throws LevelMismatch if it does not lie there.
  FieldElement lowered(const LevelPtr& target) const;

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
  bool operator==(const FieldElement& other) const;

  GroupValue value() const;
  /// Residue of a value-0 element; throws NonzeroValue otherwise.
  Coef residue() const;

  std::string to_string() const;

 private:
  LevelPtr level_;
  std::vector<RatFun> c_;
};

/// A node of a tower. Level 0 is the base field; each other level adjoins one
/// generator to its parent. Immutable once built.
class Level : public std::enable_shared_from_this<Level> {
 public:
  static LevelPtr base(BaseField field);

  const BaseField& field() const { return *field_; }
  const LevelPtr& parent() const { return parent_; }
  bool is_base() const { return parent_ == nullptr; }
  std::size_t depth() const { return depth_; }
  const std::string& name() const { return name_; }
  /// Degree over the parent (1 for the base).
  int degree() const { return degree_; }
  /// Degree over the base field.
  int total_degree() const { return total_; }
  /// Monic minimal polynomial coefficients over the parent, low to high.
  const std::vector<FieldElement>& minpoly() const { return minpoly_; }
  const GroupValue& root_value() const { return root_value_; }
  const SubgroupDesc& value_group() const { return group_; }

  LevelPtr self() const { return shared_from_this(); }
  /// Chain from the base up to this level.
  std::vector<LevelPtr> path() const;
  bool has_ancestor(const LevelPtr& other) const;
  const Level* root() const;

  /// The adjoined generator as an element of this level.
  FieldElement generator() const;
  /// Base variable (rational function fields) as an element of this level.
  FieldElement variable(std::size_t index) const;
  /// Names of generators from the base upward, for printing.
  std::vector<std::string> generator_names() const;

 private:
  friend LevelPtr construct_extension(const LevelPtr& parent, const std::string& name,
                                      const std::vector<FieldElement>& minpoly, const GroupValue& root_value);
  Level() = default;

  std::shared_ptr<const BaseField> field_;
  LevelPtr parent_;
  std::size_t depth_ = 0;
  std::string name_;
  int degree_ = 1;
  int total_ = 1;
  std::vector<FieldElement> minpoly_;
  GroupValue root_value_;
  SubgroupDesc group_;
};

/// Adjoins a root of the monic polynomial sum minpoly[i] x^i (coefficients at
/// the parent level) with certified value. Checks monicity, degree, the total
/// ramification certificate and that the value is a Newton polygon slope.
LevelPtr construct_extension(const LevelPtr& parent, const std::string& name,
                             const std::vector<FieldElement>& minpoly, const GroupValue& root_value);

/// Deepest of two levels on one chain; LevelMismatch if neither contains the other.
LevelPtr common_level(const LevelPtr& a, const LevelPtr& b);

/// Coordinates of e over the ancestor level: [K(level):ancestor] elements of the ancestor.
std::vector<FieldElement> coordinates_over(const FieldElement& e, const LevelPtr& ancestor);

/// Value of an Artin-Schreier root: nu(c)/p for nu(c) < 0 in characteristic p.
GroupValue artin_schreier_root_value(const FieldElement& c);

/// d with n = e*f*p^d.
int ostrowski_defect(long n, long e, long f, long p);

}  // namespace valx
