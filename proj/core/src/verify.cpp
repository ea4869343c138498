#include "sandpile/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <unordered_set>

#include "sandpile/dynamics.hpp"
#include "sandpile/fixpoints.hpp"

namespace sandpile {

namespace {

struct DiagramCache {
  std::size_t node_cap;
  std::map<std::pair<int, Height>, TransitionDiagram> store;

  const TransitionDiagram& get(ModelKind model, Height n) {
    const auto key = std::make_pair(static_cast<int>(model), n);
    auto it = store.find(key);
    if (it == store.end())
      it = store.emplace(key, bfs_reachable(n, model, {node_cap})).first;
    return it->second;
  }
};

struct CheckOutcome {
  bool pass = true;
  std::string witness;

  void fail(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

// ---- closure: reachable states stay unimodal, conserve grains, and admit
// at most one choice column; sinks are exactly the fixed points.
CheckOutcome check_closure(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const TransitionDiagram& d = cache.get(ModelKind::Psspm, n);
  std::vector<bool> has_out(d.nodes.size(), false);
  for (const auto& e : d.edges) has_out[e.src] = true;
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
    const Configuration& c = d.nodes[id];
    if (!is_unimodal(c)) {
      out.fail("non-unimodal reachable state " + format_config(c));
      return out;
    }
    if (c.grain_sum() != n) {
      out.fail("grain sum changed at " + format_config(c));
      return out;
    }
    try {
      (void)choice_column(c);
    } catch (const MultipleChoiceColumns& err) {
      out.fail(std::string("choice ambiguity: ") + err.what() + " at " + format_config(c));
      return out;
    }
    if (has_out[id] == is_fixed(c)) {
      out.fail("sink/fixed-point mismatch at " + format_config(c));
      return out;
    }
  }
  return out;
}

// ---- relation-oracle: the prefix-sum decision agrees with a direct
// regular-expression oracle on every {-1,0,1} string of length <= 10.
bool regex_weakly_close(const std::vector<Height>& values) {
  static const std::regex pattern("(z*mz*pz*)*");
  std::string text;
  bool nonzero = false;
  for (Height v : values) {
    text += v == 0 ? 'z' : (v == -1 ? 'm' : 'p');
    if (v != 0) nonzero = true;
  }
  if (!nonzero) return true;  // the all-zero difference reads as the empty word
  return std::regex_match(text, pattern);
}

CheckOutcome check_relation_oracle() {
  CheckOutcome out;
  for (int len = 0; len <= 10; ++len) {
    std::vector<Height> values(static_cast<std::size_t>(len), -1);
    while (true) {
      const bool mine = weakly_close_pattern(values);
      const bool oracle = regex_weakly_close(values);
      if (mine != oracle) {
        std::string s;
        for (Height v : values) s += (v == 0 ? "0" : (v == -1 ? "-" : "+"));
        out.fail("disagreement on sequence '" + s + "': prefix-sum says " +
                 (mine ? "yes" : "no") + ", regex says " + (oracle ? "yes" : "no"));
        return out;
      }
      int k = len - 1;
      while (k >= 0 && values[static_cast<std::size_t>(k)] == 1) {
        values[static_cast<std::size_t>(k)] = -1;
        --k;
      }
      if (k < 0) break;
      ++values[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

// ---- technical-lemma: along any trajectory, a column that stays maximal
// and starts within 2 of its right (resp. left) neighbor keeps that bound.
// A violation on some trajectory is equivalent to a violation across a
// single step (take the first step where the bound breaks), so scanning all
// edges covers every root-to-sink path.
CheckOutcome check_technical_lemma(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const TransitionDiagram& d = cache.get(ModelKind::Psspm, n);
  for (const auto& e : d.edges) {
    const Configuration& u = d.nodes[e.src];
    const Configuration& v = d.nodes[e.dst];
    if (u.empty()) continue;
    const Height umax = *std::max_element(u.heights().begin(), u.heights().end());
    const Height vmax = *std::max_element(v.heights().begin(), v.heights().end());
    const Column lo = std::min(u.begin_col(), v.begin_col()) - 1;
    const Column hi = std::max(u.end_col(), v.end_col()) + 1;
    for (Column i = lo; i < hi; ++i) {
      if (u.at(i) != umax || v.at(i) != vmax) continue;
      if (u.at(i) <= u.at(i + 1) + 2 && v.at(i) > v.at(i + 1) + 2) {
        out.fail("right form broken at column " + std::to_string(i) + " across " +
                 format_config(u) + " -> " + format_config(v));
        return out;
      }
      if (u.at(i - 1) + 2 >= u.at(i) && v.at(i - 1) + 2 < v.at(i)) {
        out.fail("left form broken at column " + std::to_string(i) + " across " +
                 format_config(u) + " -> " + format_config(v));
        return out;
      }
    }
  }
  return out;
}

// ---- path-similarity: running the same word after the two branches of a
// choice keeps the results weakly close.
CheckOutcome check_path_similarity(DiagramCache& cache, Height n, std::uint64_t seed) {
  CheckOutcome out;
  const TransitionDiagram& d = cache.get(ModelKind::Psspm, n);
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n + 1)));
  std::uniform_int_distribution<std::size_t> pick_node(0, d.nodes.size() - 1);
  std::uniform_int_distribution<std::uint64_t> pick_len(0, static_cast<std::uint64_t>(n) *
                                                               static_cast<std::uint64_t>(n));
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const Configuration& a = d.nodes[pick_node(rng)];
    Word w;
    const std::uint64_t len = pick_len(rng);
    w.letters.reserve(len);
    for (std::uint64_t k = 0; k < len; ++k)
      w.letters.push_back(coin(rng) ? Rule::Left : Rule::Right);
    const Configuration right_side = apply_word(step_right(a), w);
    const Configuration left_side = apply_word(step_left(a), w);
    if (!is_weakly_close(right_side, left_side)) {
      out.fail("paths diverged from " + format_config(a) + " under word " + w.str());
      return out;
    }
  }
  return out;
}

// ---- extremal: the always-left / always-right runs land on the lex
// extremes of the reachable fixed points.
CheckOutcome check_extremal(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const auto fps = fixed_points_of(cache.get(ModelKind::Psspm, n));
  if (fps.empty()) {
    out.fail("no fixed point found");
    return out;
  }
  if (leftmost_fixpoint(n) != fps.back())
    out.fail("always-left run gives " + format_config(leftmost_fixpoint(n)) +
             ", lex-max reachable fixed point is " + format_config(fps.back()));
  else if (rightmost_fixpoint(n) != fps.front())
    out.fail("always-right run gives " + format_config(rightmost_fixpoint(n)) +
             ", lex-min reachable fixed point is " + format_config(fps.front()));
  return out;
}

// ---- successor-uniqueness: every non-lex-max reachable fixed point has
// exactly one close partner among the reachable fixed points, and the
// constructive successor returns it.
CheckOutcome check_successor_uniqueness(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const auto fps = fixed_points_of(cache.get(ModelKind::Psspm, n));
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const Configuration& a = fps[i];
    if (a == fps.back()) continue;  // lex-max
    std::vector<const Configuration*> partners;
    for (const Configuration& b : fps)
      if (is_close(a, b)) partners.push_back(&b);
    if (partners.size() != 1) {
      std::string names;
      for (const auto* p : partners) {
        if (!names.empty()) names += ", ";
        names += format_config(*p);
      }
      out.fail(format_config(a) + " has " + std::to_string(partners.size()) +
               " close partners among reachable fixed points" +
               (names.empty() ? "" : ": " + names));
      return out;
    }
    const auto built = successor(a);
    if (!built || *built != *partners.front()) {
      out.fail("constructive successor of " + format_config(a) + " returned " +
               (built ? format_config(*built) : std::string("none")) + ", expected " +
               format_config(*partners.front()));
      return out;
    }
  }
  return out;
}

// ---- chain-completeness: the successor walk enumerates exactly the
// reachable fixed points, lex-ascending and pairwise close.
CheckOutcome check_chain_completeness(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const auto fps = fixed_points_of(cache.get(ModelKind::Psspm, n));
  FixpointChain chain;
  try {
    chain = enumerate_fixpoints(n);
  } catch (const ChainBroken& err) {
    out.fail(std::string("chain broken: ") + err.what());
    return out;
  }
  if (chain.points.size() != fps.size()) {
    out.fail("chain has " + std::to_string(chain.points.size()) + " points, BFS finds " +
             std::to_string(fps.size()) + " fixed points");
    return out;
  }
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (chain.points[i] != fps[i]) {
      out.fail("chain point " + format_config(chain.points[i]) + " differs from BFS point " +
               format_config(fps[i]));
      return out;
    }
  }
  for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
    if (!is_close(chain.points[i], chain.points[i + 1]) ||
        !lex_less(chain.points[i], chain.points[i + 1])) {
      out.fail("chain order broken between " + format_config(chain.points[i]) + " and " +
               format_config(chain.points[i + 1]));
      return out;
    }
  }
  return out;
}

// ---- interval: reachable fixed points equal the sequential ones inside
// the chain's lex interval.
CheckOutcome check_interval(Height n, std::size_t node_cap) {
  CheckOutcome out;
  const IntervalReport report = interval_check(n, {node_cap});
  if (!report.pass) {
    std::string detail;
    if (!report.missing_from_chain.empty())
      detail += "missing " + format_config(report.missing_from_chain.front());
    if (!report.extra_in_chain.empty()) {
      if (!detail.empty()) detail += ", ";
      detail += "extra " + format_config(report.extra_in_chain.front());
    }
    out.fail("interval mismatch (" + detail + ")");
  }
  return out;
}

// ---- inclusion-witness: parallel reachability is contained in sequential
// reachability; a sequential-only state is recorded when one exists.
CheckOutcome check_inclusion_witness(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const TransitionDiagram& par = cache.get(ModelKind::Psspm, n);
  const TransitionDiagram& seq = cache.get(ModelKind::Sspm, n);
  const std::unordered_set<Configuration> seq_set(seq.nodes.begin(), seq.nodes.end());
  for (const Configuration& c : par.nodes) {
    if (!seq_set.contains(c)) {
      out.fail("parallel-reachable state " + format_config(c) + " is not sequentially reachable");
      return out;
    }
  }
  const std::unordered_set<Configuration> par_set(par.nodes.begin(), par.nodes.end());
  const Configuration* any_state = nullptr;
  for (const Configuration& c : seq.nodes) {
    if (par_set.contains(c)) continue;
    if (!any_state) any_state = &c;
    if (is_fixed(c)) {  // a sequential-only fixed point is the sharper witness
      out.witness = "sequential-only fixed point: " + format_config(c);
      return out;
    }
  }
  out.witness = any_state ? "sequential-only state: " + format_config(*any_state)
                          : "none (reachable sets coincide)";
  return out;
}

// ---- n2-bound: no trajectory is longer than n^2 steps.
CheckOutcome check_iteration_bound(DiagramCache& cache, Height n) {
  CheckOutcome out;
  const DiagramStats stats = diagram_stats(cache.get(ModelKind::Psspm, n));
  if (stats.max_path_length > static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    out.fail("longest trajectory has " + std::to_string(stats.max_path_length) + " steps");
  return out;
}

// ---- sqrt2n-bound: fixed-point supports stay within floor(sqrt(2n)).
CheckOutcome check_support_bound(Height n) {
  CheckOutcome out;
  const auto rows = support_radius_report(n, n);
  const SupportRadiusRow& row = rows.front();
  if (!row.within)
    out.fail("support [" + std::to_string(row.min_column) + ", " +
             std::to_string(row.max_column) + "] exceeds radius " + std::to_string(row.bound));
  return out;
}

struct CheckSpec {
  std::string name;
  Height default_ceiling;
};

const std::vector<CheckSpec>& check_specs() {
  static const std::vector<CheckSpec> specs = {
      {"chain-completeness", 15}, {"closure", 20},       {"extremal", 15},
      {"inclusion-witness", 12},  {"interval", 12},      {"n2-bound", 20},
      {"path-similarity", 12},    {"relation-oracle", 1'000'000},
      {"sqrt2n-bound", 400},      {"successor-uniqueness", 15},
      {"technical-lemma", 10},
  };
  return specs;
}

}  // namespace

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& spec : check_specs()) v.push_back(spec.name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckSpec> selected;
  if (opts.checks.empty()) {
    selected = check_specs();
  } else {
    for (const std::string& name : opts.checks) {
      const auto it = std::find_if(check_specs().begin(), check_specs().end(),
                                   [&](const CheckSpec& s) { return s.name == name; });
      if (it == check_specs().end()) {
        std::string known;
        for (const auto& s : check_specs()) known += " " + s.name;
        throw ParseError("unknown check '" + name + "'; known checks:" + known);
      }
      selected.push_back(*it);
    }
    std::sort(selected.begin(), selected.end(),
              [](const CheckSpec& a, const CheckSpec& b) { return a.name < b.name; });
    selected.erase(std::unique(selected.begin(), selected.end(),
                               [](const CheckSpec& a, const CheckSpec& b) {
                                 return a.name == b.name;
                               }),
                   selected.end());
  }

  DiagramCache cache{opts.node_cap, {}};
  std::optional<CheckOutcome> relation_memo;  // n-independent, computed once
  std::vector<CheckResult> results;

  for (const CheckSpec& spec : selected) {
    for (Height n = 0; n <= opts.n_max; ++n) {
      CheckResult row;
      row.check = spec.name;
      row.grains = n;
      if (!opts.unsafe_cap && n > spec.default_ceiling) {
        row.pass = true;
        row.capped = true;
        row.witness = "skipped: n above default ceiling " + std::to_string(spec.default_ceiling);
        results.push_back(std::move(row));
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      CheckOutcome outcome;
      try {
        if (spec.name == "closure") {
          outcome = check_closure(cache, n);
        } else if (spec.name == "relation-oracle") {
          if (!relation_memo) relation_memo = check_relation_oracle();
          outcome = *relation_memo;
        } else if (spec.name == "technical-lemma") {
          outcome = check_technical_lemma(cache, n);
        } else if (spec.name == "path-similarity") {
          outcome = check_path_similarity(cache, n, opts.seed);
        } else if (spec.name == "extremal") {
          outcome = check_extremal(cache, n);
        } else if (spec.name == "successor-uniqueness") {
          outcome = check_successor_uniqueness(cache, n);
        } else if (spec.name == "chain-completeness") {
          outcome = check_chain_completeness(cache, n);
        } else if (spec.name == "interval") {
          outcome = check_interval(n, opts.node_cap);
        } else if (spec.name == "inclusion-witness") {
          outcome = check_inclusion_witness(cache, n);
        } else if (spec.name == "n2-bound") {
          outcome = check_iteration_bound(cache, n);
        } else if (spec.name == "sqrt2n-bound") {
          outcome = check_support_bound(n);
        }
      } catch (const CapExceeded& err) {
        outcome.fail(std::string("aborted: ") + err.what());
      }
      const auto stop = std::chrono::steady_clock::now();
      row.pass = outcome.pass;
      row.witness = outcome.witness;
      row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      results.push_back(std::move(row));
    }
  }
  return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace sandpile
