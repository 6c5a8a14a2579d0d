#pragma once

// Finite prefixes of pseudo-Cauchy sequences. Every statement here is about
// the given prefix only; "on the tail" means the longest suffix of it.

#include <optional>
#include <string>
#include <vector>

#include "valx/extension.hpp"

namespace valx {

struct PcsPrefix {
  std::vector<FieldElement> z;

  /// gap_mu = value(z_mu - z_{mu+1}), mu < m.
  std::vector<GroupValue> gaps() const;
};

/// Strictly increasing gaps and value(z_mu - z_rho) = gap_mu for mu < rho.
bool verify_prefix(const PcsPrefix& p);

/// value(y - z_mu) = gap_mu for every mu < m.
bool is_limit_at_prefix(const FieldElement& y, const PcsPrefix& p);

enum class TrackKind { IncreasingOnTail, ConstantOnTail, Mixed };
std::string to_string(TrackKind k);

struct Track {
  TrackKind kind = TrackKind::Mixed;
  /// value(f(z_mu)) for mu < m.
  std::vector<GroupValue> values;
  /// First index of the classified suffix.
  std::size_t tail_start = 0;
};

Track poly_track(const Poly& f, const PcsPrefix& p);

struct PairLimitReport {
  bool gamma_above_gaps = false;
  bool a_is_limit = false;
  /// First mu with value(a - z_mu) != gap_mu.
  std::optional<std::size_t> first_mismatch;
  /// gamma above every gap and a a limit: both directions witnessed on the prefix.
  bool consistent = false;
  /// gamma <= some gap although the pair is minimal.
  bool contradiction = false;
  /// Supremum of the gaps seen so far (last gap).
  GroupValue gap_sup;
};

PairLimitReport pair_limit_check(const PairOfDefinition& pd, const PcsPrefix& p);

/// A root of f from the supplied list that is a limit of the prefix.
std::optional<FieldElement> limit_root_witness(const Poly& f, const PcsPrefix& p, const std::vector<FieldElement>& roots);

}  // namespace valx
