#include "lpmw/chains.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lpmw {

namespace {

// Unranks k into the k-th unordered pair {i, j}, 1 <= i < j <= m, ordered by
// (i, j). Deterministic decode of a single draw keeps the stream layout
// stable.
std::pair<int, int> unrank_pair(int m, std::uint64_t k) {
  for (int i = 1; i < m; ++i) {
    const std::uint64_t row = static_cast<std::uint64_t>(m - i);
    if (k < row) return {i, i + 1 + static_cast<int>(k)};
    k -= row;
  }
  throw std::logic_error("unrank_pair: rank out of range");
}

}  // namespace

ChainKernel::ChainKernel(Variant v, LatticePathMatroid bounds)
    : variant_(v), bounds_(std::move(bounds)) {}

ChainKernel ChainKernel::dyck_random_transposition(int n) {
  return ChainKernel(Variant::DyckRandomTransposition, catalan_matroid(n));
}

ChainKernel ChainKernel::dyck_adjacent_transposition(int n) {
  return ChainKernel(Variant::DyckAdjacentTransposition, catalan_matroid(n));
}

ChainKernel ChainKernel::basis_exchange(LatticePathMatroid matroid) {
  return ChainKernel(Variant::BasisExchange, std::move(matroid));
}

ChainKernel ChainKernel::bernoulli_laplace(int m, int r) {
  if (m < 2) throw std::invalid_argument("bernoulli_laplace: need m >= 2");
  return ChainKernel(Variant::BernoulliLaplace, uniform_matroid(m, r));
}

std::int64_t ChainKernel::proposals_per_step() const {
  const std::int64_t m = path_length();
  switch (variant_) {
    case Variant::DyckRandomTransposition:
    case Variant::BernoulliLaplace:
      return m * (m - 1) / 2;
    case Variant::DyckAdjacentTransposition:
      return m - 1;
    case Variant::BasisExchange:
      return m * static_cast<std::int64_t>(path_up_count());
  }
  return 0;
}

std::vector<LatticePath> ChainKernel::state_space(std::size_t cap) const {
  if (state_count() > cap)
    throw std::length_error("state_space: state-count cap exceeded");
  return enumerate_between(bounds_.lower(), bounds_.upper());
}

std::string ChainKernel::name() const {
  switch (variant_) {
    case Variant::DyckRandomTransposition: return "dyck-rt";
    case Variant::DyckAdjacentTransposition: return "dyck-adj";
    case Variant::BasisExchange: return "basis-exchange";
    case Variant::BernoulliLaplace: return "bernoulli-laplace";
  }
  return "?";
}

namespace {

struct StepState {
  std::vector<Step> steps;
  std::vector<int> h;      // running heights h_1..h_m
  std::vector<int> lo, hi; // bound heights h_1..h_m of A and B

  StepState(const LatticePath& p, const LatticePathMatroid& bounds)
      : steps(p.steps()),
        h(heights(p).values()),
        lo(heights(bounds.lower()).values()),
        hi(heights(bounds.upper()).values()) {}

  // Swap validity against the bounds, checked only on [i, j-1] where the
  // heights move; O(j - i).
  bool swap_valid(int i, int j, int delta) const {
    for (int y = i; y < j; ++y) {
      const int moved = h[static_cast<std::size_t>(y - 1)] + delta;
      if (moved < lo[static_cast<std::size_t>(y - 1)] || moved > hi[static_cast<std::size_t>(y - 1)])
        return false;
    }
    return true;
  }

  // Applies the swap of unequal steps at i < j and maintains heights.
  void apply_swap(int i, int j) {
    const int delta = steps[static_cast<std::size_t>(i - 1)] == Step::Down ? 2 : -2;
    std::swap(steps[static_cast<std::size_t>(i - 1)], steps[static_cast<std::size_t>(j - 1)]);
    for (int y = i; y < j; ++y) h[static_cast<std::size_t>(y - 1)] += delta;
  }
};

// One kernel transition operating on a mutable state; shared by step() and
// simulate().
void advance(const ChainKernel& kernel, StepState& state, Rng& rng) {
  const int m = kernel.path_length();
  const auto propose_swap = [&](int i, int j) {
    if (state.steps[static_cast<std::size_t>(i - 1)] == state.steps[static_cast<std::size_t>(j - 1)])
      return;  // swapping equal steps is the identity move
    const int delta = state.steps[static_cast<std::size_t>(i - 1)] == Step::Down ? 2 : -2;
    if (kernel.variant() == ChainKernel::Variant::BernoulliLaplace ||
        state.swap_valid(i, j, delta))
      state.apply_swap(i, j);
  };

  switch (kernel.variant()) {
    case ChainKernel::Variant::DyckRandomTransposition:
    case ChainKernel::Variant::BernoulliLaplace: {
      const auto [i, j] = unrank_pair(m, rng.below(static_cast<std::uint64_t>(m) *
                                                   static_cast<std::uint64_t>(m - 1) / 2));
      propose_swap(i, j);
      break;
    }
    case ChainKernel::Variant::DyckAdjacentTransposition: {
      const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
      propose_swap(i, i + 1);
      break;
    }
    case ChainKernel::Variant::BasisExchange: {
      // a from the whole ground set (wasted a-in-basis proposals included),
      // b from the current basis.
      const int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      const int r = kernel.path_up_count();
      int b = 0, seen = 0;
      const int target = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
      for (int i = 1; i <= m; ++i) {
        if (state.steps[static_cast<std::size_t>(i - 1)] == Step::Up && seen++ == target) {
          b = i;
          break;
        }
      }
      if (a == b) break;  // B' = B: accepted self-loop
      if (state.steps[static_cast<std::size_t>(a - 1)] == Step::Up) break;  // |B'| < r: hold
      const int i = std::min(a, b), j = std::max(a, b);
      propose_swap(i, j);
      break;
    }
  }
}

}  // namespace

LatticePath ChainKernel::step(const LatticePath& s, Rng& rng) const {
  if (!in_state_space(s)) throw std::invalid_argument("step: state outside the state space");
  StepState state(s, bounds_);
  advance(*this, state, rng);
  return LatticePath(std::move(state.steps));
}

LatticePath simulate(const ChainKernel& kernel, const LatticePath& start, long steps,
                     std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("simulate: steps must be >= 0");
  if (!kernel.in_state_space(start))
    throw std::invalid_argument("simulate: start outside the state space");
  StepState state(start, kernel.bounds());
  Rng rng(seed);
  for (long t = 0; t < steps; ++t) advance(kernel, state, rng);
  return LatticePath(std::move(state.steps));
}

TransitionMatrix::TransitionMatrix(std::vector<LatticePath> states, std::int64_t denominator,
                                   std::vector<std::int64_t> proposal_counts)
    : states_(std::move(states)), denom_(denominator), counts_(std::move(proposal_counts)) {
  if (states_.empty() || counts_.size() != states_.size() * states_.size() || denom_ <= 0)
    throw std::invalid_argument("TransitionMatrix: inconsistent dimensions");
}

std::vector<double> TransitionMatrix::dense() const {
  std::vector<double> out(counts_.size());
  const double inv = 1.0 / static_cast<double>(denom_);
  for (std::size_t i = 0; i < counts_.size(); ++i)
    out[i] = static_cast<double>(counts_[i]) * inv;
  return out;
}

bool TransitionMatrix::is_symmetric() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (counts_[i * n + j] != counts_[j * n + i]) return false;
  return true;
}

bool TransitionMatrix::rows_stochastic() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += counts_[i * n + j];
    if (sum != denom_) return false;
  }
  return true;
}

bool TransitionMatrix::is_irreducible() const {
  const std::size_t n = size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && j != i && counts_[i * n + j] > 0) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == n;
}

bool TransitionMatrix::is_aperiodic() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    if (counts_[i * n + i] > 0) return true;
  return n == 1;
}

TransitionMatrix transition_matrix(const ChainKernel& kernel, std::size_t state_cap) {
  const auto states = kernel.state_space(state_cap);
  const std::size_t n = states.size();
  std::map<LatticePath, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(states[i], i);

  const std::int64_t denom = kernel.proposals_per_step();
  std::vector<std::int64_t> counts(n * n, 0);

  const int m = kernel.path_length();
  const auto ha = heights(kernel.bounds().lower());
  const auto hb = heights(kernel.bounds().upper());

  for (std::size_t si = 0; si < n; ++si) {
    const LatticePath& x = states[si];
    const auto h = heights(x);
    std::int64_t moved = 0;

    // records a successful move to the swapped path
    const auto move_to = [&](int i, int j, std::int64_t weight) {
      std::vector<Step> steps = x.steps();
      std::swap(steps[static_cast<std::size_t>(i - 1)], steps[static_cast<std::size_t>(j - 1)]);
      const auto it = index.find(LatticePath(std::move(steps)));
      counts[si * n + it->second] += weight;
      moved += weight;
    };

    // validity of swapping unequal steps at i < j
    const auto valid = [&](int i, int j) {
      if (kernel.variant() == ChainKernel::Variant::BernoulliLaplace) return true;
      const int delta = x.step(i) == Step::Down ? 2 : -2;
      for (int y = i; y < j; ++y) {
        const int hy = h.at(y) + delta;
        if (hy < ha.at(y) || hy > hb.at(y)) return false;
      }
      return true;
    };

    switch (kernel.variant()) {
      case ChainKernel::Variant::DyckRandomTransposition:
      case ChainKernel::Variant::BernoulliLaplace:
        for (int i = 1; i < m; ++i)
          for (int j = i + 1; j <= m; ++j)
            if (x.step(i) != x.step(j) && valid(i, j)) move_to(i, j, 1);
        break;
      case ChainKernel::Variant::DyckAdjacentTransposition:
        for (int i = 1; i < m; ++i)
          if (x.step(i) != x.step(i + 1) && valid(i, i + 1)) move_to(i, i + 1, 1);
        break;
      case ChainKernel::Variant::BasisExchange:
        // proposal (a, b), a outside the basis, b inside; valid exchanges
        // are exactly the valid unequal-step swaps
        for (int a = 1; a <= m; ++a) {
          if (x.step(a) == Step::Up) continue;
          for (int b = 1; b <= m; ++b) {
            if (x.step(b) != Step::Up) continue;
            const int i = std::min(a, b), j = std::max(a, b);
            if (valid(i, j)) move_to(i, j, 1);
          }
        }
        break;
    }
    counts[si * n + si] += denom - moved;
  }
  return TransitionMatrix(states, denom, std::move(counts));
}

}  // namespace lpmw
