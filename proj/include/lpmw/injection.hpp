#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpmw/counting.hpp"
#include "lpmw/matroid.hpp"
#include "lpmw/paths.hpp"

namespace lpmw {

enum class InjectionCase { Case1 = 0, Case2 = 1, Case3 = 2 };

const char* to_string(InjectionCase c);

/// Result of one application of the pair map: the case taken, the lattice
/// position where the paths were spliced, and the two output paths.
/// `up_at_e` carries an up-step at e and a down-step at f; `up_at_f` the
/// reverse. Both lie between the matroid bounds.
struct InjectionMove {
  InjectionCase tag;
  int pivot;  // lattice position in [0, m]
  LatticePath up_at_e;
  LatticePath up_at_f;
};

/// Maps a pair (p, q) with up-steps at e,f on p and down-steps at e,f on q
/// to a pair in the mixed classes, by the first applicable of three cases:
///
///   1. p and q share a height at some position x in [e, f-1]: swap the
///      suffixes after the first such x.
///   2. Otherwise let d be the height gap at f-1 and x the first position in
///      [f, m] where the gap returns to d; swap the step blocks [f..x].
///      Taken only when x exists and both results stay between the bounds.
///   3. Otherwise the mirror image on the left: x is the last position in
///      [0, e-1] where the gap equals its value at e; swap blocks [x+1..e].
///
/// Throws std::invalid_argument when (p, q) is outside the domain.
InjectionMove classify_and_apply(const LatticePathMatroid& matroid, int e, int f,
                                 const LatticePath& p, const LatticePath& q);

/// Inverse of classify_and_apply on its image: case 1 is recognized by an
/// intersection inside [e, f-1], otherwise the case-2 block swap is
/// attempted (it is its own inverse) and accepted if it lands in the domain
/// classes, otherwise the case-3 splice is undone. Returns nothing when the
/// pair is not in the image. Throws when (up_at_e, up_at_f) is not in the
/// codomain classes.
std::optional<std::pair<LatticePath, LatticePath>> invert(const LatticePathMatroid& matroid,
                                                          int e, int f,
                                                          const LatticePath& up_at_e,
                                                          const LatticePath& up_at_f);

struct InjectionReport {
  long long domain_size = 0;
  long long image_size = 0;
  std::array<long long, 3> case_tally{0, 0, 0};
  long long violation_count = 0;
  std::vector<std::string> violations;  // first few witnesses, for reports

  bool injective() const { return violation_count == 0 && image_size == domain_size; }
  void merge(const InjectionReport& other);
};

/// Enumerates all of B_ef x B^ef, applies the map, and checks membership of
/// the outputs, collision-freeness, and the round trip through invert.
/// Violations are recorded, not thrown. Ground sets up to 16 elements.
InjectionReport verify_injection(const LatticePathMatroid& matroid, int e, int f);

/// Merged report over every pair e < f.
InjectionReport verify_injection_all(const LatticePathMatroid& matroid);

}  // namespace lpmw
