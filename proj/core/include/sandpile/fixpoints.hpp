#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sandpile/config.hpp"
#include "sandpile/explorer.hpp"

namespace sandpile {

/// Two adjacent columns (left, left+1) holding the same positive height.
struct Plateau {
  Column left = 0;
  Height height = 0;

  Column right() const noexcept { return left + 1; }

  friend bool operator==(const Plateau&, const Plateau&) = default;
};

/// Raised when a configuration claimed to be a reachable fixed point does
/// not decompose into two stairs with at most one plateau per side.
class MalformedFixpoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plateau structure of a fixed point: at most one plateau on the ascending
/// side, one spanning the top, one on the descending side. When the peak
/// run is longer than two columns (peak-height side plateaus, flat piles)
/// the run pairs are dealt out left plateau first, then top, then right,
/// mirroring the cut of the profile into two stairs.
struct PlateauProfile {
  std::optional<Plateau> left_plateau;
  std::optional<Plateau> top_plateau;
  std::optional<Plateau> right_plateau;
  Column peak = 0;  // leftmost maximum column (0 for the empty configuration)
};

/// Requires is_fixed(c) and is_unimodal(c) (std::invalid_argument
/// otherwise); throws MalformedFixpoint when a side carries two plateaus.
PlateauProfile plateau_profile(const Configuration& c);

/// The fixed point reached from the single stack of n grains by always
/// preferring the left rule; the lexicographic maximum of the reachable
/// fixed points. Uses the n^2 step budget (an upper bound on any run).
Configuration leftmost_fixpoint(Height n);

/// Right-rule counterpart: the lexicographic minimum.
Configuration rightmost_fixpoint(Height n);

/// The unique fixed point b with is_close(a, b), or nullopt when a is the
/// leftmost (lex-max) fixed point for its grain count. Construction: add
/// one grain just right of the left plateau (one column left of the support
/// when the ascending side is a perfect stair), remove one just right of
/// the right plateau (at the rightmost top column when there is none);
/// ambiguous plateau readings fall back across the admissible (add, remove)
/// pairs until the result is fixed and close. Requires is_fixed(a).
std::optional<Configuration> successor(const Configuration& a);

/// The reachable fixed points for n grains, lex-ascending, consecutive
/// entries linked by the close relation.
struct FixpointChain {
  Height grains = 0;
  std::vector<Configuration> points;
};

/// Raised when the successor walk from the rightmost fixed point fails to
/// end at the leftmost one; carries the point it got stuck on.
class ChainBroken : public std::runtime_error {
 public:
  ChainBroken(std::string message, Configuration stuck_point);

  Configuration stuck;
};

/// Walks successor() from rightmost_fixpoint(n) until it returns nullopt
/// and checks the walk ends at leftmost_fixpoint(n).
FixpointChain enumerate_fixpoints(Height n);

/// Compares the successor-walk chain with the sequentially reachable fixed
/// points restricted to the lex interval [chain.front(), chain.back()].
struct IntervalReport {
  Height grains = 0;
  bool pass = false;
  std::size_t chain_count = 0;
  std::size_t sspm_fixed_point_count = 0;
  std::size_t interval_count = 0;
  std::vector<Configuration> missing_from_chain;  // in the interval, not in the chain
  std::vector<Configuration> extra_in_chain;      // in the chain, not in the interval
};

IntervalReport interval_check(Height n, const ExploreOptions& opts = {});

/// Occupied-column extremes over the fixed-point chain of each n, checked
/// against the floor(sqrt(2n)) radius.
struct SupportRadiusRow {
  Height grains = 0;
  Column min_column = 0;
  Column max_column = 0;
  Column bound = 0;
  bool within = false;
};

std::vector<SupportRadiusRow> support_radius_report(Height n_from, Height n_to);

}  // namespace sandpile
