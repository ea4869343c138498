#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sandpile {

using Height = std::int64_t;
using Column = std::int64_t;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finitely supported sequence of column heights, anchored at absolute
/// position 0. Canonical form: the first and last stored heights are
/// positive; the all-zero configuration stores nothing. Two configurations
/// holding the same heights at different absolute positions are distinct
/// values -- anchoring matters.
class Configuration {
 public:
  Configuration() = default;

  /// The single stack of n grains at position 0; empty when n == 0.
  static Configuration single(Height n);

  /// Canonicalizes raw data: leading/trailing zero columns are trimmed and
  /// the origin adjusted. Throws std::invalid_argument on a negative height.
  static Configuration from_heights(Column origin, std::vector<Height> heights);

  bool empty() const noexcept { return heights_.empty(); }
  std::size_t width() const noexcept { return heights_.size(); }

  /// First stored column (0 for the empty configuration).
  Column begin_col() const noexcept { return origin_; }
  /// One past the last stored column.
  Column end_col() const noexcept {
    return origin_ + static_cast<Column>(heights_.size());
  }

  /// Height at absolute column i; 0 outside the stored window.
  Height at(Column i) const noexcept {
    if (i < origin_ || i >= end_col()) return 0;
    return heights_[static_cast<std::size_t>(i - origin_)];
  }

  const std::vector<Height>& heights() const noexcept { return heights_; }

  Height grain_sum() const noexcept;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Column origin_ = 0;
  std::vector<Height> heights_;
};

/// Aligned difference sequence a_i - b_i, stored over the union of the two
/// supports (zeros outside that window are implicit).
struct DeltaSeq {
  Column origin = 0;
  std::vector<Height> values;

  friend bool operator==(const DeltaSeq&, const DeltaSeq&) = default;
};

/// Parses "h,h,_h,h": comma-separated nonnegative integers with exactly one
/// token carrying the `_` position-0 marker, or the literal "0" for the
/// empty configuration. Throws ParseError on malformed tokens, a missing or
/// duplicated marker, or a negative value.
Configuration parse_config(std::string_view text);

/// Inverse of parse_config on canonical forms. The position-0 column is
/// always shown, padded with explicit zeros when the support misses it
/// (e.g. heights [2,1] starting at column 1 print as "_0,2,1").
std::string format_config(const Configuration& c);

DeltaSeq delta(const Configuration& a, const Configuration& b);

/// One-grain-moved pattern on a raw difference sequence: exactly one -1 and
/// one +1, the -1 strictly left of the +1, zeros elsewhere.
bool close_pattern(std::span<const Height> values);

/// Concatenation of one-grain-moved blocks, decided by prefix sums: every
/// prefix sum stays in {-1, 0} and the total is 0. All-zero sequences are
/// accepted (equal configurations are weakly close).
bool weakly_close_pattern(std::span<const Height> values);

/// b equals a with a single grain moved from a right column to a left one.
bool is_close(const Configuration& a, const Configuration& b);

/// The difference decomposes into consecutive right-to-left one-grain
/// moves; reflexive.
bool is_weakly_close(const Configuration& a, const Configuration& b);

/// Lexicographic order scanning absolute columns left to right with implicit
/// zeros; at the first differing column the taller configuration is greater.
/// A close pair (a, b) always orders a before b.
std::strong_ordering lex_cmp(const Configuration& a, const Configuration& b);

inline bool lex_less(const Configuration& a, const Configuration& b) {
  return lex_cmp(a, b) == std::strong_ordering::less;
}

}  // namespace sandpile

template <>
struct std::hash<sandpile::Configuration> {
  std::size_t operator()(const sandpile::Configuration& c) const noexcept;
};
