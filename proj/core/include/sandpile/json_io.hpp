#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sandpile/config.hpp"
#include "sandpile/explorer.hpp"
#include "sandpile/fixpoints.hpp"
#include "sandpile/verify.hpp"

namespace sandpile {

/// {"origin": int, "heights": [int, ...]}
std::string to_json_string(const Configuration& c);

/// Accepts the object form above. Throws ParseError on anything else.
Configuration config_from_json(std::string_view text);

/// Full diagram dump with lex-ordered nodes. Forced moves are expanded into
/// the two identically routed L/R edges of the labeled multigraph.
std::string to_json_string(const TransitionDiagram& d);

std::string to_json_string(const DiagramStats& stats, ModelKind model, Height grains);

/// Chain with {n, count, leftmost, rightmost} metadata plus the points.
std::string to_json_string(const FixpointChain& chain);

std::string to_json_string(const IntervalReport& report);

std::string to_json_string(std::span<const SupportRadiusRow> rows);

/// Verification report: rows sorted by (check, n), plus an all_pass flag.
std::string to_json_string(std::span<const CheckResult> results);

}  // namespace sandpile
