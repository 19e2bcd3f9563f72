#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lpmw {

enum class Step : std::uint8_t { Up = 0, Down = 1 };

/// A lattice path: a finite, immutable sequence of up/down steps.
///
/// The canonical text form is a string over {U, D}; '+'/'-' are accepted as
/// input synonyms. All step indices in this library are 1-based, matching
/// the usual combinatorial convention.
class LatticePath {
 public:
  explicit LatticePath(std::vector<Step> steps);

  /// Parses "UUDD" or "++--". Throws std::invalid_argument on anything else.
  static LatticePath parse(std::string_view text);

  int length() const { return static_cast<int>(steps_.size()); }
  int up_count() const { return up_count_; }

  /// 1-based step access.
  Step step(int i) const { return steps_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Step>& steps() const { return steps_; }

  /// Terminal height: (#up) - (#down).
  int terminal_height() const { return 2 * up_count_ - length(); }

  std::string str() const;

  /// Lexicographic over steps with U before D; this is the canonical state
  /// and enumeration order everywhere in the library.
  friend auto operator<=>(const LatticePath&, const LatticePath&) = default;

 private:
  std::vector<Step> steps_;
  int up_count_ = 0;
};

/// The heights h_1..h_m of a path, with the implicit origin h_0 = 0.
class HeightProfile {
 public:
  explicit HeightProfile(std::vector<int> values);

  /// 1-based; at(0) == 0.
  int at(int i) const { return i == 0 ? 0 : values_[static_cast<std::size_t>(i - 1)]; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& values() const { return values_; }

 private:
  std::vector<int> values_;
};

/// h_i(p) = (#up steps in p[1..i]) - (#down steps in p[1..i]).
HeightProfile heights(const LatticePath& p);

/// True iff p has even length, ends at height 0, and all heights are >= 0.
bool is_dyck(const LatticePath& p);

/// Tests p <= q in the dominance order: h_i(p) <= h_i(q) for all i.
/// Requires equal lengths and equal up-counts; throws otherwise.
bool dominates(const LatticePath& q, const LatticePath& p);

/// Ascending 1-based indices of the up-steps of p.
std::vector<int> up_step_indices(const LatticePath& p);

/// Inverse of up_step_indices: the length-m path with up-steps exactly at
/// the given 1-based indices. Throws if an index is outside [1, m].
LatticePath path_from_up_set(int m, const std::vector<int>& up_indices);

/// Number of down-steps at even indices.
int narayana_statistic(const LatticePath& p);

/// All paths p with a <= p <= b, in lexicographic (U-before-D) order.
/// Throws if the bounds are not comparable. Intended for small lengths.
std::vector<LatticePath> enumerate_between(const LatticePath& a, const LatticePath& b);

/// Bit-encoded variant of enumerate_between for m <= 31: bit (i-1) of a code
/// is set iff step i is Up. Used by sweep-heavy callers that cannot afford
/// one allocation per path.
std::vector<std::uint32_t> enumerate_between_codes(const LatticePath& a,
                                                   const LatticePath& b);

std::uint32_t path_code(const LatticePath& p);
LatticePath path_from_code(int m, std::uint32_t code);

/// The path with every step flipped (U <-> D). Heights negate pointwise.
LatticePath complemented(const LatticePath& p);

/// (UD)^n, the lowest Dyck path of length 2n.
LatticePath sawtooth_path(int n);

/// U^r D^(m-r), the maximum path among those of length m with r up-steps.
LatticePath max_path(int m, int r);

/// D^(m-r) U^r, the minimum such path.
LatticePath min_path(int m, int r);

}  // namespace lpmw
