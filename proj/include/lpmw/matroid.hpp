#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpmw/counting.hpp"
#include "lpmw/paths.hpp"

namespace lpmw {

/// A lattice path matroid L[A, B]: ground set [m], bases = up-step index
/// sets of the paths between the bounding paths A <= B. The basis family is
/// never materialized unless explicitly requested.
class LatticePathMatroid {
 public:
  /// Throws if the bounds are not comparable.
  LatticePathMatroid(LatticePath lower, LatticePath upper);

  int ground_size() const { return lower_.length(); }
  int rank() const { return lower_.up_count(); }
  const LatticePath& lower() const { return lower_; }
  const LatticePath& upper() const { return upper_; }

  Count basis_count(const StepConstraints& c = {}) const;

  /// All basis paths, lexicographic. Guarded to ground sets of at most 16
  /// elements; larger verdicts must go through the counting DP.
  std::vector<LatticePath> basis_paths() const;

  bool contains_path(const LatticePath& p) const;

  friend bool operator==(const LatticePathMatroid&, const LatticePathMatroid&) = default;

 private:
  LatticePath lower_, upper_;
};

/// L[(UD)^n, U^n D^n]; bases correspond to Dyck paths of length 2n.
LatticePathMatroid catalan_matroid(int n);

/// L[(DU)^n, (UD)^n]: n independent two-element blocks, 2^n bases.
LatticePathMatroid cube_matroid(int n);

/// U(r, m) as a lattice path matroid: every r-subset is a basis.
LatticePathMatroid uniform_matroid(int m, int r);

/// The dual matroid, whose bases are the exact complements [m] \ S.
/// Realized as L[complement(B), complement(A)].
LatticePathMatroid dual(const LatticePathMatroid& matroid);

/// A contraction/deletion selection. Contracted elements are forced into
/// every basis, deleted elements are forced out; the ground set keeps its
/// labels, so minors compose with pair tests without reindexing.
class MinorSpec {
 public:
  MinorSpec() = default;
  MinorSpec(std::vector<int> contracted, std::vector<int> deleted);

  const std::vector<int>& contracted() const { return constraints_.forced_up(); }
  const std::vector<int>& deleted() const { return constraints_.forced_down(); }
  const StepConstraints& constraints() const { return constraints_; }
  bool touches(int i) const {
    return constraints_.requires_up(i) || constraints_.requires_down(i);
  }
  int size() const {
    return static_cast<int>(contracted().size() + deleted().size());
  }

 private:
  StepConstraints constraints_;
};

struct Interval {
  int lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One canonical transversal representation of the matroid: r closed
/// intervals whose systems of distinct representatives are exactly the
/// bases. Interval i runs from the i-th up-step of the upper path to the
/// i-th up-step of the lower path (the upper path's up-steps come first in
/// the dominance order).
std::vector<Interval> transversal_system(const LatticePathMatroid& matroid);

/// The four constrained basis counts for a pair e < f inside a minor, and
/// the division-free negative-correlation verdict
///   |B_ef| * |B^ef| <= |B_e^f| * |B_f^e|.
struct CorrelationVerdict {
  Count both_in;       // |B_ef|
  Count both_out;      // |B^ef|
  Count e_in_f_out;    // |B_e^f|
  Count f_in_e_out;    // |B_f^e|
  bool holds = false;
  Count slack;         // e_in_f_out * f_in_e_out - both_in * both_out
};

CorrelationVerdict minor_pair_counts(const LatticePathMatroid& matroid, const MinorSpec& minor,
                                     int e, int f);

/// True iff the verdict holds for every pair e < f outside the minor.
bool is_negatively_correlated(const LatticePathMatroid& matroid, const MinorSpec& minor = {});

struct BalanceViolation {
  MinorSpec minor;
  int e = 0, f = 0;
};

struct BalanceReport {
  long long minors_checked = 0;
  long long pairs_checked = 0;
  std::vector<BalanceViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the correlation inequality over every minor with
/// |I| + |J| <= exhaustive_budget (default 4) and `random_budget` seeded
/// random minors. Random minor k is drawn from Rng(split_seed(seed, k)):
/// a size t uniform in [0, min(m, 6)], t distinct elements, each assigned
/// to I or J by a coin flip.
BalanceReport check_balanced(const LatticePathMatroid& matroid, int random_budget,
                             std::uint64_t seed, int exhaustive_budget = 4);

/// Brute-force check of the basis exchange axiom on an explicit family of
/// equal-size sets. Throws if the sets are not all the same size.
bool verify_exchange_axiom(const std::vector<std::vector<int>>& bases);

/// Matroid spec file: two lines over {U, D} ('+'/'-' accepted), lower bound
/// first. Blank lines and trailing whitespace are ignored.
LatticePathMatroid parse_matroid(std::istream& in);
LatticePathMatroid read_matroid_file(const std::string& filename);

/// Invokes fn on every lattice path matroid with the given ground-set size:
/// all ranks, all comparable bound pairs (including lower == upper).
void for_each_lattice_path_matroid(
    int m, const std::function<void(const LatticePathMatroid&)>& fn);

}  // namespace lpmw
