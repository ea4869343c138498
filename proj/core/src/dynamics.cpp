#include "sandpile/dynamics.hpp"

#include <algorithm>

namespace sandpile {

char rule_char(Rule r) { return r == Rule::Left ? 'L' : 'R'; }

Rule rule_opposite(Rule r) { return r == Rule::Left ? Rule::Right : Rule::Left; }

Word Word::parse(std::string_view text) {
  Word w;
  w.letters.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'L':
        w.letters.push_back(Rule::Left);
        break;
      case 'R':
        w.letters.push_back(Rule::Right);
        break;
      default:
        throw ParseError(std::string("word letter must be L or R, got '") + ch + "'");
    }
  }
  return w;
}

Word Word::repeated(Rule r, std::size_t count) {
  Word w;
  w.letters.assign(count, r);
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters.size());
  for (Rule r : letters) s += rule_char(r);
  return s;
}

bool can_fire_left(const Configuration& c, Column i) {
  return c.at(i - 1) + 2 <= c.at(i);
}

bool can_fire_right(const Configuration& c, Column i) {
  return c.at(i) >= c.at(i + 1) + 2;
}

FiringPlan firing_plan(const Configuration& c, Rule choice) {
  FiringPlan plan;
  for (Column i = c.begin_col(); i < c.end_col(); ++i) {
    const bool left = can_fire_left(c, i);
    const bool right = can_fire_right(c, i);
    if (left && right) {
      (choice == Rule::Left ? plan.fires_left : plan.fires_right).push_back(i);
    } else if (left) {
      plan.fires_left.push_back(i);
    } else if (right) {
      plan.fires_right.push_back(i);
    }
  }
  return plan;
}

namespace {

Configuration move_one_grain(const Configuration& c, Column from, Column to) {
  const Column lo = std::min({c.begin_col(), from, to});
  const Column hi = std::max({c.end_col(), from + 1, to + 1});
  std::vector<Height> heights(static_cast<std::size_t>(hi - lo));
  for (Column col = lo; col < hi; ++col)
    heights[static_cast<std::size_t>(col - lo)] = c.at(col);
  heights[static_cast<std::size_t>(from - lo)] -= 1;
  heights[static_cast<std::size_t>(to - lo)] += 1;
  return Configuration::from_heights(lo, std::move(heights));
}

}  // namespace

std::vector<SequentialMove> sspm_successors(const Configuration& c) {
  std::vector<SequentialMove> moves;
  for (Column i = c.begin_col(); i < c.end_col(); ++i) {
    if (can_fire_left(c, i))
      moves.push_back({move_one_grain(c, i, i - 1), Rule::Left, i});
    if (can_fire_right(c, i))
      moves.push_back({move_one_grain(c, i, i + 1), Rule::Right, i});
  }
  return moves;
}

MultipleChoiceColumns::MultipleChoiceColumns(Column first, Column second)
    : std::runtime_error("two choice columns found (" + std::to_string(first) + " and " +
                         std::to_string(second) + "); configuration is not unimodal"),
      first_column(first),
      second_column(second) {}

std::optional<Column> choice_column(const Configuration& c) {
  std::optional<Column> found;
  for (Column i = c.begin_col(); i < c.end_col(); ++i) {
    if (can_fire_left(c, i) && can_fire_right(c, i)) {
      if (found) throw MultipleChoiceColumns(*found, i);
      found = i;
    }
  }
  return found;
}

Configuration psspm_step(const Configuration& c, Rule choice) {
  const FiringPlan plan = firing_plan(c, choice);
  if (plan.empty()) return c;
  const Column lo = c.begin_col() - 1;
  const Column hi = c.end_col() + 1;
  std::vector<Height> heights(static_cast<std::size_t>(hi - lo));
  for (Column col = c.begin_col(); col < c.end_col(); ++col)
    heights[static_cast<std::size_t>(col - lo)] = c.at(col);
  for (Column col : plan.fires_left) {
    heights[static_cast<std::size_t>(col - lo)] -= 1;
    heights[static_cast<std::size_t>(col - 1 - lo)] += 1;
  }
  for (Column col : plan.fires_right) {
    heights[static_cast<std::size_t>(col - lo)] -= 1;
    heights[static_cast<std::size_t>(col + 1 - lo)] += 1;
  }
  return Configuration::from_heights(lo, std::move(heights));
}

Configuration step_left(const Configuration& c) { return psspm_step(c, Rule::Left); }

Configuration step_right(const Configuration& c) { return psspm_step(c, Rule::Right); }

Configuration apply_word(const Configuration& c, const Word& w) {
  Configuration cur = c;
  for (Rule r : w.letters) {
    Configuration next = psspm_step(cur, r);
    if (next == cur) return cur;  // fixed point: the rest of the word is identity
    cur = std::move(next);
  }
  return cur;
}

Configuration apply_uniform_word(const Configuration& c, Rule r, std::uint64_t count) {
  Configuration cur = c;
  for (std::uint64_t k = 0; k < count; ++k) {
    Configuration next = psspm_step(cur, r);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

bool is_fixed(const Configuration& c) {
  if (c.empty()) return true;
  // includes the ground columns on both sides of the support
  for (Column i = c.begin_col() - 1; i < c.end_col(); ++i) {
    const Height d = c.at(i) - c.at(i + 1);
    if (d > 1 || d < -1) return false;
  }
  return true;
}

bool is_unimodal(const Configuration& c) {
  const auto& h = c.heights();
  std::size_t i = 1;
  while (i < h.size() && h[i - 1] <= h[i]) ++i;
  while (i < h.size() && h[i - 1] >= h[i]) ++i;
  return i >= h.size();
}

}  // namespace sandpile
