#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpmw/counting.hpp"
#include "lpmw/matroid.hpp"
#include "lpmw/paths.hpp"
#include "lpmw/rng.hpp"

namespace lpmw {

inline constexpr std::size_t kDefaultStateCap = 20000;

/// A Markov transition rule on a space of lattice paths. All four variants
/// are symmetric, so the stationary distribution is uniform on the state
/// space. State spaces are intervals [A, B] of paths:
///
///   dyck random transposition  - Dyck paths; swap a uniform unordered pair
///   dyck adjacent transposition- Dyck paths; swap a uniform adjacent pair
///   basis exchange             - paths of L[A, B]; propose ground element a
///                                and basis element b, exchange if valid
///   bernoulli-laplace          - all r-subsets; unordered pair swap
///
/// Proposals that would leave the state space hold the current state.
class ChainKernel {
 public:
  enum class Variant {
    DyckRandomTransposition,
    DyckAdjacentTransposition,
    BasisExchange,
    BernoulliLaplace,
  };

  static ChainKernel dyck_random_transposition(int n);
  static ChainKernel dyck_adjacent_transposition(int n);
  static ChainKernel basis_exchange(LatticePathMatroid matroid);
  static ChainKernel bernoulli_laplace(int m, int r);

  Variant variant() const { return variant_; }
  const LatticePathMatroid& bounds() const { return bounds_; }
  int path_length() const { return bounds_.ground_size(); }
  int path_up_count() const { return bounds_.rank(); }

  /// Number of equally likely proposals per step (the exact transition
  /// denominator): C(m,2), m-1, or m*r depending on the variant.
  std::int64_t proposals_per_step() const;

  bool in_state_space(const LatticePath& p) const { return bounds_.contains_path(p); }

  Count state_count() const { return bounds_.basis_count(); }

  /// States in lexicographic (U-before-D) order. Throws when the space
  /// exceeds `cap`.
  std::vector<LatticePath> state_space(std::size_t cap = kDefaultStateCap) const;

  /// One transition from s. Deterministic in the generator stream.
  LatticePath step(const LatticePath& s, Rng& rng) const;

  /// Name used in reports: dyck-rt, dyck-adj, basis-exchange, bernoulli-laplace.
  std::string name() const;

 private:
  ChainKernel(Variant v, LatticePathMatroid bounds);

  Variant variant_;
  LatticePathMatroid bounds_;
};

/// Exact symmetric transition matrix: every entry is (proposal count) /
/// (proposals per step). Stored as integer proposal counts plus the common
/// denominator, so symmetry and stochasticity are exact statements.
class TransitionMatrix {
 public:
  TransitionMatrix(std::vector<LatticePath> states, std::int64_t denominator,
                   std::vector<std::int64_t> proposal_counts);

  std::size_t size() const { return states_.size(); }
  const std::vector<LatticePath>& states() const { return states_; }
  std::int64_t denominator() const { return denom_; }
  std::int64_t proposal_count(std::size_t i, std::size_t j) const {
    return counts_[i * states_.size() + j];
  }
  Rational entry(std::size_t i, std::size_t j) const {
    return Rational(proposal_count(i, j), denom_);
  }

  /// Row-major dense double rendering.
  std::vector<double> dense() const;

  bool is_symmetric() const;
  bool rows_stochastic() const;
  bool is_irreducible() const;
  bool is_aperiodic() const;  // some state holds with positive probability

  int path_length() const { return states_.front().length(); }
  int path_up_count() const { return states_.front().up_count(); }

 private:
  std::vector<LatticePath> states_;
  std::int64_t denom_;
  std::vector<std::int64_t> counts_;
};

TransitionMatrix transition_matrix(const ChainKernel& kernel,
                                   std::size_t state_cap = kDefaultStateCap);

/// State after `steps` transitions from `start`; O(steps * m) time, no
/// matrix. Deterministic given the seed.
LatticePath simulate(const ChainKernel& kernel, const LatticePath& start, long steps,
                     std::uint64_t seed);

}  // namespace lpmw
