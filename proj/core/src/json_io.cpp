#include "sandpile/json_io.hpp"

#include <json.hpp>

namespace sandpile {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const Configuration& c) {
  ordered_json j;
  j["origin"] = c.begin_col();
  j["heights"] = c.heights();
  return j;
}

}  // namespace

std::string to_json_string(const Configuration& c) { return config_json(c).dump(); }

Configuration config_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("invalid JSON configuration: ") + err.what());
  }
  if (!j.is_object() || !j.contains("origin") || !j.contains("heights") ||
      !j["origin"].is_number_integer() || !j["heights"].is_array())
    throw ParseError("JSON configuration must be {\"origin\": int, \"heights\": [int, ...]}");
  std::vector<Height> heights;
  for (const auto& v : j["heights"]) {
    if (!v.is_number_integer())
      throw ParseError("JSON configuration heights must be integers");
    heights.push_back(v.get<Height>());
  }
  try {
    return Configuration::from_heights(j["origin"].get<Column>(), std::move(heights));
  } catch (const std::invalid_argument& err) {
    throw ParseError(std::string("invalid JSON configuration: ") + err.what());
  }
}

std::string to_json_string(const TransitionDiagram& d) {
  ordered_json j;
  j["model"] = std::string(model_name(d.model));
  j["n"] = d.grains;
  j["root"] = d.root;
  j["nodes"] = ordered_json::array();
  std::vector<bool> has_out(d.nodes.size(), false);
  for (const auto& e : d.edges) has_out[e.src] = true;
  for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
    ordered_json node = config_json(d.nodes[id]);
    ordered_json entry;
    entry["id"] = id;
    entry["origin"] = node["origin"];
    entry["heights"] = node["heights"];
    entry["text"] = format_config(d.nodes[id]);
    entry["fixed"] = !has_out[id];
    j["nodes"].push_back(std::move(entry));
  }
  j["edges"] = ordered_json::array();
  auto push_edge = [&](std::uint32_t src, std::uint32_t dst, char label) {
    ordered_json e;
    e["src"] = src;
    e["dst"] = dst;
    e["label"] = std::string(1, label);
    j["edges"].push_back(std::move(e));
  };
  for (const auto& e : d.edges) {
    if (e.label == EdgeLabel::Both) {
      push_edge(e.src, e.dst, 'L');
      push_edge(e.src, e.dst, 'R');
    } else {
      push_edge(e.src, e.dst, e.label == EdgeLabel::Left ? 'L' : 'R');
    }
  }
  return j.dump();
}

std::string to_json_string(const DiagramStats& stats, ModelKind model, Height grains) {
  ordered_json j;
  j["model"] = std::string(model_name(model));
  j["n"] = grains;
  j["nodes"] = stats.node_count;
  j["edges"] = stats.edge_count;
  j["fixed_points"] = stats.fixed_point_count;
  j["max_path_length"] = stats.max_path_length;
  return j.dump();
}

std::string to_json_string(const FixpointChain& chain) {
  ordered_json j;
  j["n"] = chain.grains;
  j["count"] = chain.points.size();
  j["leftmost"] = chain.points.empty() ? ordered_json() : config_json(chain.points.back());
  j["rightmost"] = chain.points.empty() ? ordered_json() : config_json(chain.points.front());
  j["points"] = ordered_json::array();
  for (const Configuration& c : chain.points) {
    ordered_json p = config_json(c);
    p["text"] = format_config(c);
    j["points"].push_back(std::move(p));
  }
  return j.dump();
}

std::string to_json_string(const IntervalReport& report) {
  ordered_json j;
  j["n"] = report.grains;
  j["pass"] = report.pass;
  j["chain_count"] = report.chain_count;
  j["sspm_fixed_point_count"] = report.sspm_fixed_point_count;
  j["interval_count"] = report.interval_count;
  j["missing_from_chain"] = ordered_json::array();
  for (const Configuration& c : report.missing_from_chain)
    j["missing_from_chain"].push_back(format_config(c));
  j["extra_in_chain"] = ordered_json::array();
  for (const Configuration& c : report.extra_in_chain)
    j["extra_in_chain"].push_back(format_config(c));
  return j.dump();
}

std::string to_json_string(std::span<const SupportRadiusRow> rows) {
  ordered_json j = ordered_json::array();
  for (const SupportRadiusRow& row : rows) {
    ordered_json r;
    r["n"] = row.grains;
    r["min_column"] = row.min_column;
    r["max_column"] = row.max_column;
    r["bound"] = row.bound;
    r["within"] = row.within;
    j.push_back(std::move(r));
  }
  return j.dump();
}

std::string to_json_string(std::span<const CheckResult> results) {
  ordered_json j;
  bool ok = true;
  j["results"] = ordered_json::array();
  for (const CheckResult& r : results) {
    ordered_json row;
    row["check"] = r.check;
    row["n"] = r.grains;
    row["pass"] = r.pass;
    if (r.capped) row["capped"] = true;
    if (!r.witness.empty()) row["witness"] = r.witness;
    row["elapsed_ms"] = r.elapsed_ms;
    j["results"].push_back(std::move(row));
    ok = ok && r.pass;
  }
  j["all_pass"] = ok;
  return j.dump();
}

}  // namespace sandpile
