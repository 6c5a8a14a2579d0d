#pragma once

// Distinguished chains, minimal-pair reduction, the j-count and the
// implicit constant field classifier.

#include <optional>
#include <string>
#include <vector>

#include "valx/extension.hpp"

namespace valx {

struct DistinguishedChain {
  /// a_0, ..., a_n with a_n expected in the base field.
  std::vector<FieldElement> elements;
  /// Maximality of each delta over lower-degree elements is taken on trust.
  bool certified = true;

  /// value(a_i - a_{i+1}) for i < n.
  std::vector<GroupValue> deltas() const;
};

/// Checks strictly decreasing degrees and deltas and that a_n lies in K.
/// Throws NotHenselianContext or BrokenMonotonicity.
bool verify_chain(const DistinguishedChain& chain);

/// Index i of the selected minimal pair (a_i, gamma).
std::size_t minimal_pair_index(const DistinguishedChain& chain, const GammaSpec& spec);
PairOfDefinition minimal_pair_from_chain(const DistinguishedChain& chain, const GammaSpec& spec,
                                         const std::vector<std::string>& names = {});

/// Optional refutation search: returns a candidate z of smaller degree than
/// a_i with value(a_i - z) > delta_i, if any.
std::optional<FieldElement> refute_chain_step(const DistinguishedChain& chain, std::size_t i,
                                              const std::vector<FieldElement>& candidates);

int j_count(const PairOfDefinition& pd);

/// Prime-to-p part of the ramification index of the (totally ramified) degree.
long tame_degree(long degree, unsigned long residue_char_exponent);
long tame_degree(const LevelPtr& level);

enum class ICVerdict { Exact, ProperWithJ, BoundsOnly };
std::string to_string(ICVerdict v);

struct ICReport {
  ICVerdict verdict = ICVerdict::BoundsOnly;
  /// Field descriptor for Exact, e.g. "K(a)^h".
  std::string field;
  int degree = 0;
  std::optional<int> j;
  std::string lower;
  int lower_degree = 1;
  std::string upper;
  int upper_degree = 1;
  std::string rule;
  /// Residue-transcendental with j >= 2: only one of the two alternatives is known to hold.
  bool disjunct_undecided = false;
};

ICReport ic_classify(const PairOfDefinition& pd);

/// Equal ramification indices and residue fields of the two minimal fields.
bool minimal_field_invariants_check(const PairOfDefinition& p1, const PairOfDefinition& p2);

}  // namespace valx
