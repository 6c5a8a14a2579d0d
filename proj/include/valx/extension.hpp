#pragma once

// The valuation omega = nu_{a,gamma} on K(x) and what can be read off a pair
// of definition (a, gamma).

#include <optional>
#include <string>

#include "valx/newton.hpp"

namespace valx {

enum class MinimalityCert { None, ValueOrder, Chain, Asserted };

struct PairOfDefinition {
  FieldElement a;
  GammaSpec spec = GammaSpec::above_all(1);
  /// How a is printed in field descriptors, e.g. "a" for K(a)^h.
  std::string name = "a";
  MinimalityCert minimal = MinimalityCert::None;

  PairOfDefinition() = default;
  PairOfDefinition(FieldElement a_, GammaSpec spec_, std::string name_ = "a",
                   MinimalityCert minimal_ = MinimalityCert::None);

  GroupValue gamma() const { return gamma_value(spec); }
  /// The ground field K (base of the tower).
  LevelPtr ground() const { return a.level()->path().front(); }
  std::strong_ordering cmp(const GroupValue& v, const GroupValue& w) const { return valx::cmp(v, w, spec); }
};

enum class OmegaKind { ValueTranscendental, ResidueTranscendental };
std::string to_string(OmegaKind kind);

/// min_i nu(c_i) + i*gamma over the Taylor expansion of f at a.
GroupValue nu_a_gamma(const Poly& f, const PairOfDefinition& pd);
/// omega(num) - omega(den).
GroupValue nu_a_gamma(const Poly& num, const Poly& den, const PairOfDefinition& pd);

OmegaKind classify(const PairOfDefinition& pd);

/// gamma1 = gamma2 and nu(a1 - a2) >= gamma1.
bool pairs_equivalent(const PairOfDefinition& p1, const PairOfDefinition& p2);

/// nu a < gamma and the order of nu a modulo nu K equals [K(a):K]. False
/// means the criterion does not apply.
bool is_minimal_pair_by_value_order(const PairOfDefinition& pd);

/// Monic minimal polynomial Q of a over K.
Poly min_poly(const PairOfDefinition& pd);
/// [K(a):K]
int degree(const PairOfDefinition& pd);

/// Value group of K(a). Throws Unsupported if the reduction of the powers of a
/// does not terminate.
SubgroupDesc field_value_group(const FieldElement& a);

/// gamma + sum of min(gamma, d) over the conjugate differences d.
GroupValue omega_Q(const PairOfDefinition& pd);
/// Max of omega(x - b) over the roots b of f.
GroupValue delta(const Poly& f, const PairOfDefinition& pd);
/// min_i omega(f_i) + i*omegaQ over the Q-expansion of f.
GroupValue nu_Q(const Poly& f, const Poly& q, const GroupValue& omega_q, const PairOfDefinition& pd);

struct StructureReport {
  OmegaKind kind = OmegaKind::ValueTranscendental;
  GroupValue omega_q;
  /// nu K(a)
  SubgroupDesc field_group;
  /// Residue-transcendental case: nu K(a) + Z omegaQ, a rational lattice.
  SubgroupDesc value_group;
  /// "(1/3)Z (+) Z*omegaQ" or "(1/15)Z".
  std::string value_group_text;
  std::string residue_field;
  std::optional<Int> index_e;
};

StructureReport structure_report(const PairOfDefinition& pd);

enum class PurityKind { PE1, PE2, WeaklyPure, Deferred };

struct PurityVerdict {
  PurityKind kind = PurityKind::Deferred;
  std::optional<Int> e;
  std::string to_string() const;
};

/// Purity of (L(x)|L, omega) where L is the level of a.
PurityVerdict classify_purity(const PairOfDefinition& pd);

bool coincidence_test(const PairOfDefinition& p1, const PairOfDefinition& p2);
int simultaneous_extension_bound(const PairOfDefinition& pd);

}  // namespace valx
