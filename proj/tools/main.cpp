#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "sandpile/dynamics.hpp"
#include "sandpile/explorer.hpp"
#include "sandpile/fixpoints.hpp"
#include "sandpile/json_io.hpp"
#include "sandpile/verify.hpp"

namespace {

using namespace sandpile;

constexpr Height kPsspmNCap = 20;
constexpr Height kSspmNCap = 12;

ExploreOptions explore_options() {
  ExploreOptions opts;
  if (const char* env = std::getenv("SANDPILE_CAP")) {
    try {
      opts.node_cap = static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw ParseError("SANDPILE_CAP must be a nonnegative integer");
    }
  }
  return opts;
}

Configuration parse_config_arg(const std::string& text) {
  std::string_view sv = text;
  while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
  if (!sv.empty() && sv.front() == '{') return config_from_json(sv);
  return parse_config(sv);
}

void check_n_cap(Height n, ModelKind model, bool unsafe_cap) {
  const Height cap = model == ModelKind::Psspm ? kPsspmNCap : kSspmNCap;
  if (!unsafe_cap && n > cap)
    throw CapExceeded(static_cast<std::size_t>(n), static_cast<std::size_t>(cap));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int cmd_step(const std::string& config_text, const std::string& choice,
             const std::string& format) {
  const Configuration c = parse_config_arg(config_text);
  const Rule rule = Word::parse(choice).letters.at(0);
  const Configuration next = psspm_step(c, rule);
  if (format == "json")
    std::cout << to_json_string(next) << "\n";
  else
    std::cout << format_config(next) << "\n";
  return 0;
}

int cmd_run(const std::string& config_text, const std::string& word_text, int times,
            bool trace, const std::string& format) {
  const Word word = Word::parse(word_text);
  Configuration cur = parse_config_arg(config_text);
  if (trace)
    std::cout << R"({"step":0,"letter":null,"config":)" << to_json_string(cur)
              << R"(,"fixed":)" << (is_fixed(cur) ? "true" : "false") << "}\n";
  std::size_t step = 0;
  bool done = false;
  for (int round = 0; round < times && !done; ++round) {
    for (Rule r : word.letters) {
      Configuration next = psspm_step(cur, r);
      if (next == cur) {  // fixed point: the rest of the word is identity
        done = true;
        break;
      }
      cur = std::move(next);
      ++step;
      if (trace)
        std::cout << "{\"step\":" << step << ",\"letter\":\"" << rule_char(r)
                  << "\",\"config\":" << to_json_string(cur)
                  << ",\"fixed\":" << (is_fixed(cur) ? "true" : "false") << "}\n";
    }
  }
  if (format == "json")
    std::cout << to_json_string(cur) << "\n";
  else
    std::cout << format_config(cur) << "\n";
  return 0;
}

int cmd_fixpoints(Height n, const std::string& model_text, const std::string& method,
                  bool check, bool unsafe_cap, const std::string& format) {
  const ModelKind model = parse_model(model_text);
  if (method == "successor" && model != ModelKind::Psspm)
    throw ParseError("method=successor is only defined for model=psspm");

  auto via_bfs = [&]() {
    check_n_cap(n, model, unsafe_cap);
    return fixed_points_of(bfs_reachable(n, model, explore_options()));
  };

  if (check) {
    if (model != ModelKind::Psspm)
      throw ParseError("--check compares the successor walk with BFS; use model=psspm");
    const FixpointChain chain = enumerate_fixpoints(n);
    const std::vector<Configuration> bfs_fps = via_bfs();
    const bool agree = chain.points == bfs_fps;
    if (format == "json") {
      std::cout << R"({"n":)" << n << R"(,"count":)" << bfs_fps.size() << R"(,"agree":)"
                << (agree ? "true" : "false") << "}\n";
    } else if (agree) {
      std::cout << "OK: " << bfs_fps.size() << " fixed points, methods agree\n";
    } else {
      std::cout << "MISMATCH: successor walk has " << chain.points.size()
                << " fixed points, BFS has " << bfs_fps.size() << "\n";
    }
    return agree ? 0 : 1;
  }

  std::vector<Configuration> points;
  if (method == "bfs") {
    points = via_bfs();
  } else {
    const FixpointChain chain = enumerate_fixpoints(n);
    points = chain.points;
  }
  if (format == "json") {
    FixpointChain chain;
    chain.grains = n;
    chain.points = std::move(points);
    std::cout << to_json_string(chain) << "\n";
  } else {
    for (const Configuration& c : points) std::cout << format_config(c) << "\n";
  }
  return 0;
}

int cmd_explore(Height n, const std::string& model_text, const std::string& dot_path,
                const std::string& json_path, bool unsafe_cap, const std::string& format) {
  const ModelKind model = parse_model(model_text);
  check_n_cap(n, model, unsafe_cap);
  const TransitionDiagram d = bfs_reachable(n, model, explore_options());
  if (!dot_path.empty()) write_file(dot_path, to_dot(d));
  if (!json_path.empty()) write_file(json_path, to_json_string(d));
  const DiagramStats stats = diagram_stats(d);
  if (format == "json") {
    std::cout << to_json_string(stats, model, n) << "\n";
  } else {
    std::cout << "model=" << model_name(model) << " n=" << n << " nodes=" << stats.node_count
              << " edges=" << stats.edge_count << " fixed_points=" << stats.fixed_point_count
              << " max_path_length=" << stats.max_path_length << "\n";
  }
  return 0;
}

int cmd_verify(Height n_max, const std::string& checks_csv, std::uint64_t seed,
               bool unsafe_cap, const std::string& out_path, const std::string& format) {
  VerifyOptions opts;
  opts.n_max = n_max;
  opts.seed = seed;
  opts.unsafe_cap = unsafe_cap;
  opts.node_cap = explore_options().node_cap;
  if (!checks_csv.empty()) {
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) opts.checks.push_back(item);
  }
  const std::vector<CheckResult> results = run_verification(opts);
  const std::string report = to_json_string(std::span<const CheckResult>(results));
  if (!out_path.empty()) write_file(out_path, report);
  if (format == "json") {
    std::cout << report << "\n";
  } else {
    std::size_t failures = 0;
    for (const CheckResult& r : results) {
      const char* tag = r.capped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
      std::cout << "[" << tag << "] " << r.check << " n=" << r.grains;
      if (!r.capped) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", r.elapsed_ms);
        std::cout << " (" << buf << " ms)";
      }
      if (!r.pass || (!r.witness.empty() && !r.capped)) std::cout << ": " << r.witness;
      std::cout << "\n";
      if (!r.pass) ++failures;
    }
    if (failures == 0)
      std::cout << "all " << results.size() << " check rows passed\n";
    else
      std::cout << failures << " of " << results.size() << " check rows failed\n";
  }
  return all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric sand pile models: stepping, exploration, fixed-point "
               "enumeration, and verification"};
  app.require_subcommand(1);

  std::string config_text;
  std::string choice = "L";
  std::string word_text;
  std::string model_text = "psspm";
  std::string method = "successor";
  std::string format = "text";
  std::string dot_path, json_path, out_path, checks_csv;
  Height n = 0, n_max = 10;
  int times = 1;
  bool check = false, unsafe_cap = false, trace = false;
  std::uint64_t seed = 0x5eedULL;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  CLI::App* step = app.add_subcommand("step", "Apply one parallel step to a configuration");
  step->add_option("--config", config_text, "Configuration, e.g. \"1,4,_3,2,1\" or JSON")
      ->required();
  step->add_option("--choice", choice, "Rule at the choice column (L or R)")
      ->check(CLI::IsMember({"L", "R"}))
      ->capture_default_str();
  add_format(step);

  CLI::App* run = app.add_subcommand("run", "Apply a word of choices, letter by letter");
  run->add_option("--config", config_text, "Starting configuration")->required();
  run->add_option("--word", word_text, "Word over {L,R}, e.g. LLRL")->required();
  run->add_option("--times", times, "Repeat the word this many times")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  run->add_flag("--trace", trace, "Emit one JSON line per applied step");
  add_format(run);

  CLI::App* fix = app.add_subcommand("fixpoints", "List reachable fixed points, lex-ascending");
  fix->add_option("--n", n, "Grain count")->required()->check(CLI::Range(0, 1000000));
  fix->add_option("--model", model_text, "Model")
      ->check(CLI::IsMember({"psspm", "sspm"}))
      ->capture_default_str();
  fix->add_option("--method", method, "successor walk or BFS sweep")
      ->check(CLI::IsMember({"successor", "bfs"}))
      ->capture_default_str();
  fix->add_flag("--check", check, "Run both methods and compare");
  fix->add_flag("--unsafe-cap", unsafe_cap, "Lift the default n ceilings");
  add_format(fix);

  CLI::App* explore = app.add_subcommand("explore", "BFS the reachable state space");
  explore->add_option("--n", n, "Grain count")->required()->check(CLI::Range(0, 1000000));
  explore->add_option("--model", model_text, "Model")
      ->check(CLI::IsMember({"psspm", "sspm"}))
      ->capture_default_str();
  explore->add_option("--dot", dot_path, "Write the diagram as GraphViz DOT");
  explore->add_option("--json", json_path, "Write the diagram as JSON");
  explore->add_flag("--unsafe-cap", unsafe_cap, "Lift the default n ceilings");
  add_format(explore);

  CLI::App* verify = app.add_subcommand("verify", "Run the model verification checks");
  verify->add_option("--n-max", n_max, "Run every check for n in [0, n-max]")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();
  verify->add_option("--checks", checks_csv, "Comma-separated check names (default: all)");
  verify->add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();
  verify->add_flag("--unsafe-cap", unsafe_cap, "Lift per-check default n ceilings");
  verify->add_option("--out", out_path, "Also write the JSON report to a file");
  add_format(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (step->parsed()) return cmd_step(config_text, choice, format);
    if (run->parsed()) return cmd_run(config_text, word_text, times, trace, format);
    if (fix->parsed()) return cmd_fixpoints(n, model_text, method, check, unsafe_cap, format);
    if (explore->parsed())
      return cmd_explore(n, model_text, dot_path, json_path, unsafe_cap, format);
    if (verify->parsed())
      return cmd_verify(n_max, checks_csv, seed, unsafe_cap, out_path, format);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const CapExceeded& err) {
    std::cerr << "error: " << err.what() << " (raise with --unsafe-cap / SANDPILE_CAP)\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
