#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpmw/paths.hpp"

namespace lpmw {

/// Exact nonnegative count; never rounded.
using Count = boost::multiprecision::cpp_int;

/// Exact rational built on Count. All probabilities and correlation slack
/// computations in the library stay in this type; floating point only enters
/// for eigenvalues, logs and total-variation curves.
using Rational = boost::multiprecision::cpp_rational;

Count binomial(int n, int k);

/// C_n = binom(2n, n) / (n + 1), exactly.
Count catalan_number(int n);

/// N(n, k) = binom(n, k) * binom(n, k-1) / n, exactly. Requires 1 <= k <= n.
Count narayana_number(int n, int k);

/// Forced steps for constrained counts: indices in forced_up must carry an
/// up-step, indices in forced_down a down-step. 1-based, disjoint.
class StepConstraints {
 public:
  StepConstraints() = default;
  StepConstraints(std::vector<int> forced_up, std::vector<int> forced_down);

  const std::vector<int>& forced_up() const { return forced_up_; }
  const std::vector<int>& forced_down() const { return forced_down_; }
  bool requires_up(int i) const;
  bool requires_down(int i) const;
  bool empty() const { return forced_up_.empty() && forced_down_.empty(); }
  int max_index() const;

  StepConstraints with_up(int i) const;
  StepConstraints with_down(int i) const;

 private:
  std::vector<int> forced_up_;
  std::vector<int> forced_down_;
};

/// Number of paths p with a <= p <= b that satisfy the constraints.
/// Height-window dynamic program, O(m * height-range) exact additions.
/// Throws if the bounds are not comparable or a constraint index is out of
/// range; an unsatisfiable constraint set yields 0, not an error.
Count count_between(const LatticePath& a, const LatticePath& b,
                    const StepConstraints& c = {});

/// Suffix-count table of the same DP: completions(i, h) is the number of
/// admissible ways to finish from lattice position i at height h. Heights
/// outside the window [h_i(a), h_i(b)] are structurally absent and read 0.
class CompletionTable {
 public:
  CompletionTable(const LatticePath& a, const LatticePath& b, const StepConstraints& c = {});

  const Count& total() const { return at(0, 0); }
  const Count& at(int position, int height) const;
  int length() const { return m_; }
  bool step_up_allowed(int i) const;    // constraint check only
  bool step_down_allowed(int i) const;

 private:
  int m_;
  std::vector<int> lower_;  // h_i(a), i = 0..m
  std::vector<int> upper_;  // h_i(b)
  std::vector<std::vector<Count>> rows_;
  std::vector<std::uint8_t> up_ok_, down_ok_;
  static const Count zero_;
};

/// Draws a path exactly uniformly from the constrained interval [a, b] by
/// sequential choice with exact rational step probabilities. Deterministic
/// given the seed; batches should split seeds per run via split_seed.
/// Throws if the constraint set is empty.
LatticePath sample_between(const LatticePath& a, const LatticePath& b,
                           const StepConstraints& c, std::uint64_t seed);

/// Constrained-interval counts classified by the steps taken at a pair of
/// positions e < f, for every pair at once.
struct PairStepCounts {
  Count up_up;      // up at e,  up at f
  Count down_down;  // down at e, down at f
  Count up_down;    // up at e,  down at f
  Count down_up;    // down at e, up at f
};

/// Fused forward/backward DP computing PairStepCounts for all e < f in one
/// pass, O(m^2 * height-range). Entry (e, f) equals the four count_between
/// calls with the correspondingly augmented constraints.
class PairCountTable {
 public:
  PairCountTable(const LatticePath& a, const LatticePath& b, const StepConstraints& c = {});

  const PairStepCounts& pair(int e, int f) const;  // 1 <= e < f <= m
  int length() const { return m_; }

 private:
  int m_;
  std::vector<PairStepCounts> cells_;  // upper triangle, row-major
};

}  // namespace lpmw
