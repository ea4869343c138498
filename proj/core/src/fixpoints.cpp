#include "sandpile/fixpoints.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sandpile/dynamics.hpp"

namespace sandpile {

namespace {

Column isqrt_floor(Height x) {
  if (x <= 0) return 0;
  auto r = static_cast<Column>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

struct PeakRun {
  Height height = 0;
  Column first = 0;
  Column last = 0;
};

PeakRun peak_run(const Configuration& c) {
  PeakRun run;
  run.height = *std::max_element(c.heights().begin(), c.heights().end());
  Column i = c.begin_col();
  while (c.at(i) != run.height) ++i;
  run.first = i;
  while (c.at(i + 1) == run.height) ++i;
  run.last = i;
  return run;
}

/// a with one grain added at `add` and one removed at `remove`, or nullopt
/// when that is not a legal move (removing from an empty column).
std::optional<Configuration> moved_grain(const Configuration& a, Column add, Column remove) {
  if (add == remove) return std::nullopt;
  if (a.at(remove) <= 0) return std::nullopt;
  const Column lo = std::min(a.begin_col(), std::min(add, remove));
  const Column hi = std::max(a.end_col(), std::max(add, remove) + 1);
  std::vector<Height> heights(static_cast<std::size_t>(hi - lo));
  for (Column col = lo; col < hi; ++col)
    heights[static_cast<std::size_t>(col - lo)] = a.at(col);
  heights[static_cast<std::size_t>(add - lo)] += 1;
  heights[static_cast<std::size_t>(remove - lo)] -= 1;
  return Configuration::from_heights(lo, std::move(heights));
}

/// Successor construction without the leftmost-fixed-point short circuit.
std::optional<Configuration> build_successor(const Configuration& a) {
  if (a.empty()) return std::nullopt;
  const PeakRun run = peak_run(a);

  // Plateaus strictly below the peak, one per side at most.
  std::optional<Plateau> below_left, below_right;
  for (Column i = a.begin_col(); i + 1 < a.end_col(); ++i) {
    if (a.at(i) != a.at(i + 1)) continue;
    if (a.at(i) == run.height) continue;
    if (i + 1 < run.first) {
      if (below_left) return std::nullopt;
      below_left = Plateau{i, a.at(i)};
    } else if (i > run.last) {
      if (below_right) return std::nullopt;
      below_right = Plateau{i, a.at(i)};
    }
  }

  // Admissible grain moves: add just right of a left-plateau reading (the
  // ground column left of the support when the ascent is a perfect stair),
  // remove just right of a right-plateau reading, else at the rightmost top
  // column. Peak-run pairs admit both readings, so candidates are tried in
  // order until one yields a fixed close neighbor.
  std::vector<Column> adds;
  if (below_left) adds.push_back(below_left->right());
  for (Column i = run.first; i < run.last; ++i) adds.push_back(i + 1);
  adds.push_back(a.begin_col() - 1);

  std::vector<Column> removes;
  if (below_right) removes.push_back(below_right->right());
  removes.push_back(run.last);

  for (Column add : adds) {
    for (Column remove : removes) {
      const auto b = moved_grain(a, add, remove);
      if (!b) continue;
      if (is_fixed(*b) && is_close(a, *b)) return b;
    }
  }
  return std::nullopt;
}

}  // namespace

PlateauProfile plateau_profile(const Configuration& c) {
  if (!is_fixed(c) || !is_unimodal(c))
    throw std::invalid_argument("plateau_profile requires a unimodal fixed point");

  PlateauProfile profile;
  if (c.empty()) return profile;

  const PeakRun run = peak_run(c);
  profile.peak = run.first;

  for (Column i = c.begin_col(); i + 1 < c.end_col(); ++i) {
    if (c.at(i) != c.at(i + 1) || c.at(i) == run.height) continue;
    if (i + 1 < run.first) {
      if (profile.left_plateau)
        throw MalformedFixpoint("two plateaus on the ascending side of " + format_config(c));
      profile.left_plateau = Plateau{i, c.at(i)};
    } else {
      if (profile.right_plateau)
        throw MalformedFixpoint("two plateaus on the descending side of " + format_config(c));
      profile.right_plateau = Plateau{i, c.at(i)};
    }
  }

  // Pairs inside the peak run: deal them out as left plateau, top plateau,
  // right plateau (the cut of the profile into two stairs). A run of two is
  // the classic top plateau.
  const auto run_pairs = static_cast<int>(run.last - run.first);
  switch (run_pairs) {
    case 0:
      break;
    case 1:
      profile.top_plateau = Plateau{run.first, run.height};
      break;
    case 2:
      if (!profile.left_plateau && profile.right_plateau) {
        profile.left_plateau = Plateau{run.first, run.height};
        profile.top_plateau = Plateau{run.first + 1, run.height};
      } else if (profile.left_plateau && !profile.right_plateau) {
        profile.top_plateau = Plateau{run.first, run.height};
        profile.right_plateau = Plateau{run.first + 1, run.height};
      } else if (!profile.left_plateau) {
        profile.left_plateau = Plateau{run.first, run.height};
        profile.top_plateau = Plateau{run.first + 1, run.height};
      } else {
        throw MalformedFixpoint("peak run of three with both side plateaus in " +
                                format_config(c));
      }
      break;
    case 3:
      if (profile.left_plateau || profile.right_plateau)
        throw MalformedFixpoint("peak run of four with a side plateau in " + format_config(c));
      profile.left_plateau = Plateau{run.first, run.height};
      profile.top_plateau = Plateau{run.first + 1, run.height};
      profile.right_plateau = Plateau{run.first + 2, run.height};
      break;
    default:
      throw MalformedFixpoint("peak run of " + std::to_string(run_pairs + 1) +
                              " columns in " + format_config(c));
  }
  return profile;
}

Configuration leftmost_fixpoint(Height n) {
  const auto steps = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return apply_uniform_word(Configuration::single(n), Rule::Left, steps);
}

Configuration rightmost_fixpoint(Height n) {
  const auto steps = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return apply_uniform_word(Configuration::single(n), Rule::Right, steps);
}

std::optional<Configuration> successor(const Configuration& a) {
  if (!is_fixed(a)) throw std::invalid_argument("successor requires a fixed point");
  if (a == leftmost_fixpoint(a.grain_sum())) return std::nullopt;
  return build_successor(a);
}

ChainBroken::ChainBroken(std::string message, Configuration stuck_point)
    : std::runtime_error(std::move(message)), stuck(std::move(stuck_point)) {}

FixpointChain enumerate_fixpoints(Height n) {
  FixpointChain chain;
  chain.grains = n;
  const Configuration last = leftmost_fixpoint(n);
  chain.points.push_back(rightmost_fixpoint(n));

  // generous guard; chains grow like n, not n^2
  const std::size_t guard = static_cast<std::size_t>(n) * 100 + 100;
  while (chain.points.back() != last) {
    const auto next = build_successor(chain.points.back());
    if (!next)
      throw ChainBroken("successor construction failed before reaching the leftmost fixed "
                        "point at n=" + std::to_string(n) + " from " +
                            format_config(chain.points.back()),
                        chain.points.back());
    if (!is_close(chain.points.back(), *next) || !lex_less(chain.points.back(), *next))
      throw ChainBroken("successor left the close/lex order at n=" + std::to_string(n) +
                            " from " + format_config(chain.points.back()),
                        chain.points.back());
    chain.points.push_back(*next);
    if (chain.points.size() > guard)
      throw ChainBroken("successor walk did not terminate at n=" + std::to_string(n),
                        chain.points.back());
  }
  return chain;
}

IntervalReport interval_check(Height n, const ExploreOptions& opts) {
  IntervalReport report;
  report.grains = n;

  const FixpointChain chain = enumerate_fixpoints(n);
  report.chain_count = chain.points.size();

  const TransitionDiagram seq = bfs_reachable(n, ModelKind::Sspm, opts);
  const std::vector<Configuration> seq_fps = fixed_points_of(seq);
  report.sspm_fixed_point_count = seq_fps.size();

  const Configuration& lo = chain.points.front();
  const Configuration& hi = chain.points.back();
  std::vector<Configuration> interval;
  for (const Configuration& fp : seq_fps)
    if (lex_cmp(fp, lo) >= 0 && lex_cmp(fp, hi) <= 0) interval.push_back(fp);
  report.interval_count = interval.size();

  const std::unordered_set<Configuration> chain_set(chain.points.begin(), chain.points.end());
  const std::unordered_set<Configuration> interval_set(interval.begin(), interval.end());
  for (const Configuration& fp : interval)
    if (!chain_set.contains(fp)) report.missing_from_chain.push_back(fp);
  for (const Configuration& fp : chain.points)
    if (!interval_set.contains(fp)) report.extra_in_chain.push_back(fp);

  report.pass = report.missing_from_chain.empty() && report.extra_in_chain.empty();
  return report;
}

std::vector<SupportRadiusRow> support_radius_report(Height n_from, Height n_to) {
  std::vector<SupportRadiusRow> rows;
  for (Height n = n_from; n <= n_to; ++n) {
    SupportRadiusRow row;
    row.grains = n;
    row.bound = isqrt_floor(2 * n);
    const FixpointChain chain = enumerate_fixpoints(n);
    for (const Configuration& fp : chain.points) {
      if (fp.empty()) continue;
      row.min_column = std::min(row.min_column, fp.begin_col());
      row.max_column = std::max(row.max_column, fp.end_col() - 1);
    }
    row.within = row.min_column >= -row.bound && row.max_column <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sandpile
