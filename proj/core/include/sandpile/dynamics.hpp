#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sandpile/config.hpp"

namespace sandpile {

/// The two local rules: a grain falls to the left or to the right neighbor
/// when that neighbor sits at least two grains lower.
enum class Rule : std::uint8_t { Left, Right };

char rule_char(Rule r);
Rule rule_opposite(Rule r);

/// A finite sequence of step choices, written as a string over {L, R}.
struct Word {
  std::vector<Rule> letters;

  static Word parse(std::string_view text);  // throws ParseError on other letters
  static Word repeated(Rule r, std::size_t count);

  std::string str() const;
  std::size_t size() const noexcept { return letters.size(); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// True iff column i may fire one grain to the left: c_{i-1} + 2 <= c_i.
bool can_fire_left(const Configuration& c, Column i);

/// True iff column i may fire one grain to the right: c_i >= c_{i+1} + 2.
bool can_fire_right(const Configuration& c, Column i);

/// The columns fired by one parallel step, split by direction. Every column
/// whose guard holds fires; the choice settles the unique column where both
/// guards hold. The two sets are disjoint (a column fires at most one grain).
struct FiringPlan {
  std::vector<Column> fires_left;
  std::vector<Column> fires_right;

  bool empty() const noexcept { return fires_left.empty() && fires_right.empty(); }
};

FiringPlan firing_plan(const Configuration& c, Rule choice);

/// One sequential move: the configuration after a single rule application.
struct SequentialMove {
  Configuration target;
  Rule rule;
  Column column;
};

/// Every single-rule application available from c, ordered by (column, rule
/// with Left first). Empty iff c is a fixed point.
std::vector<SequentialMove> sspm_successors(const Configuration& c);

/// Raised when more than one column admits both rules. Configurations
/// reachable from a single stack stay unimodal and never trigger this; it
/// exists so invariant sweeps can surface a violation instead of silently
/// picking a column.
class MultipleChoiceColumns : public std::runtime_error {
 public:
  MultipleChoiceColumns(Column first, Column second);

  Column first_column;
  Column second_column;
};

/// The unique column where both rules apply, if any.
std::optional<Column> choice_column(const Configuration& c);

/// One parallel step: every column with exactly one applicable rule fires
/// it, the choice column (if any) fires per `choice`, and all moves land
/// simultaneously. Identity on fixed points; the choice is ignored when no
/// choice column exists, so fixed-length words apply uniformly.
Configuration psspm_step(const Configuration& c, Rule choice);

/// Parallel step preferring the left (resp. right) rule at the choice
/// column. Matches the edge-following reading on transition diagrams: take
/// the Left-labeled edge if one exists, any edge otherwise, stay put on a
/// fixed point. Equal to psspm_step(c, Rule::Left) (resp. Right) everywhere.
Configuration step_left(const Configuration& c);
Configuration step_right(const Configuration& c);

/// Left-to-right composition of preferred steps, one letter at a time.
/// Returns early once a fixed point is reached (the remaining letters act
/// as the identity), which keeps long uniform words cheap.
Configuration apply_word(const Configuration& c, const Word& w);

/// Same composition for a uniform word of `count` copies of r, without
/// materializing the word.
Configuration apply_uniform_word(const Configuration& c, Rule r, std::uint64_t count);

/// No rule applies anywhere: all adjacent height differences (including the
/// implicit zero ground next to the support) are at most 1.
bool is_fixed(const Configuration& c);

/// Heights are nondecreasing then nonincreasing over the support.
bool is_unimodal(const Configuration& c);

}  // namespace sandpile
