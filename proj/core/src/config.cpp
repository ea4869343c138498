#include "sandpile/config.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace sandpile {

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Height parse_height_token(std::string_view tok) {
  if (tok.empty()) throw ParseError("empty token");
  if (tok.front() == '-')
    throw ParseError("negative value in token '" + std::string(tok) + "'");
  Height v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("malformed token '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Configuration Configuration::single(Height n) {
  if (n < 0) throw std::invalid_argument("grain count must be nonnegative");
  Configuration c;
  if (n > 0) c.heights_.assign(1, n);
  return c;
}

Configuration Configuration::from_heights(Column origin, std::vector<Height> heights) {
  for (Height h : heights)
    if (h < 0) throw std::invalid_argument("column height must be nonnegative");
  std::size_t lead = 0;
  while (lead < heights.size() && heights[lead] == 0) ++lead;
  std::size_t tail = heights.size();
  while (tail > lead && heights[tail - 1] == 0) --tail;
  Configuration c;
  if (lead < tail) {
    c.origin_ = origin + static_cast<Column>(lead);
    c.heights_.assign(heights.begin() + static_cast<std::ptrdiff_t>(lead),
                      heights.begin() + static_cast<std::ptrdiff_t>(tail));
  }
  return c;
}

Height Configuration::grain_sum() const noexcept {
  return std::accumulate(heights_.begin(), heights_.end(), Height{0});
}

Configuration parse_config(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      tokens.push_back(trimmed(text.substr(pos)));
      break;
    }
    tokens.push_back(trimmed(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }

  // The literal "0" is the one marker-free form: the empty configuration.
  if (tokens.size() == 1 && tokens[0] == "0") return {};

  std::vector<Height> heights;
  heights.reserve(tokens.size());
  std::ptrdiff_t marker = -1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    if (!tok.empty() && tok.front() == '_') {
      if (marker >= 0) throw ParseError("multiple '_' origin markers");
      marker = static_cast<std::ptrdiff_t>(i);
      tok.remove_prefix(1);
    }
    heights.push_back(parse_height_token(tok));
  }
  if (marker < 0) throw ParseError("no '_' origin marker");
  return Configuration::from_heights(-static_cast<Column>(marker), std::move(heights));
}

std::string format_config(const Configuration& c) {
  if (c.empty()) return "0";
  const Column lo = std::min<Column>(c.begin_col(), 0);
  const Column hi = std::max<Column>(c.end_col(), 1);
  std::string out;
  for (Column col = lo; col < hi; ++col) {
    if (col != lo) out += ',';
    if (col == 0) out += '_';
    out += std::to_string(c.at(col));
  }
  return out;
}

DeltaSeq delta(const Configuration& a, const Configuration& b) {
  if (a.empty() && b.empty()) return {};
  Column lo, hi;
  if (a.empty()) {
    lo = b.begin_col();
    hi = b.end_col();
  } else if (b.empty()) {
    lo = a.begin_col();
    hi = a.end_col();
  } else {
    lo = std::min(a.begin_col(), b.begin_col());
    hi = std::max(a.end_col(), b.end_col());
  }
  DeltaSeq d;
  d.origin = lo;
  d.values.reserve(static_cast<std::size_t>(hi - lo));
  for (Column col = lo; col < hi; ++col) d.values.push_back(a.at(col) - b.at(col));
  return d;
}

bool close_pattern(std::span<const Height> values) {
  // exactly one -1, then one +1, zeros elsewhere
  int stage = 0;
  for (Height v : values) {
    if (v == 0) continue;
    if (v == -1 && stage == 0) {
      stage = 1;
    } else if (v == 1 && stage == 1) {
      stage = 2;
    } else {
      return false;
    }
  }
  return stage == 2;
}

bool weakly_close_pattern(std::span<const Height> values) {
  Height sum = 0;
  for (Height v : values) {
    sum += v;
    if (sum < -1 || sum > 0) return false;
  }
  return sum == 0;
}

bool is_close(const Configuration& a, const Configuration& b) {
  return close_pattern(delta(a, b).values);
}

bool is_weakly_close(const Configuration& a, const Configuration& b) {
  return weakly_close_pattern(delta(a, b).values);
}

std::strong_ordering lex_cmp(const Configuration& a, const Configuration& b) {
  if (a.empty() && b.empty()) return std::strong_ordering::equal;
  Column lo, hi;
  if (a.empty()) {
    lo = b.begin_col();
    hi = b.end_col();
  } else if (b.empty()) {
    lo = a.begin_col();
    hi = a.end_col();
  } else {
    lo = std::min(a.begin_col(), b.begin_col());
    hi = std::max(a.end_col(), b.end_col());
  }
  for (Column col = lo; col < hi; ++col) {
    const Height av = a.at(col);
    const Height bv = b.at(col);
    if (av != bv) return av > bv ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

}  // namespace sandpile

std::size_t std::hash<sandpile::Configuration>::operator()(
    const sandpile::Configuration& c) const noexcept {
  // FNV-1a over origin and heights
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(c.begin_col()));
  for (sandpile::Height v : c.heights()) mix(static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}
