#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lpmw/chains.hpp"
#include "lpmw/counting.hpp"
#include "lpmw/paths.hpp"

namespace lpmw {

/// f evaluated on a chain state; exact-rational valued so the Dirichlet
/// form and variance stay exact.
using StateFunction = std::function<Rational(const LatticePath&)>;

/// E(f,f) = (1/2) sum_{x,y} (f(x) - f(y))^2 P(x,y) pi(x), pi uniform. Exact.
Rational dirichlet_form(const TransitionMatrix& matrix, const StateFunction& f);

/// Var_pi(f) under the uniform distribution on `states`. Exact.
Rational variance(const std::vector<LatticePath>& states, const StateFunction& f);

/// L_pi(f) = sum_x f(x)^2 (log f(x)^2 - log E_pi(f^2)) pi(x). Floating
/// point; terms with f(x) = 0 contribute 0. Throws if f is identically 0.
double log_sobolev_entropy(const std::vector<LatticePath>& states, const StateFunction& f);

struct SpectralReport {
  double gap = 0.0;                        // 1 - (second-largest eigenvalue)
  std::optional<Rational> gap_exact;       // available for <= 2 states
  Rational jerrum_son_lower;               // 2 / (m r); the balanced-matroid
                                           // basis-exchange lower bound
  Rational log_sobolev_lower;              // 1 / (2 m r)
  std::optional<Rational> test_fn_upper;   // E(f,f)/Var(f) for the
                                           // even-index down-step statistic
  std::optional<double> alpha_upper;       // E(f,f)/L(f) for the same f
  double tolerance = 0.0;
};

/// Spectral gap via a dense symmetric eigensolve, with the exact bound
/// certificates attached. Throws on a reducible matrix or a single state.
SpectralReport spectral_gap(const TransitionMatrix& matrix, double tolerance = 1e-10);

/// E(f,f)/Var(f) for f = the even-index down-step statistic: an exact
/// rational upper bound on the spectral gap by the variational
/// characterization. For the Dyck kernels this is at most 4/n.
Rational certify_upper_bound(const ChainKernel& kernel,
                             std::size_t state_cap = kDefaultStateCap);

struct MixingReport {
  Rational epsilon;
  long t_mix = 0;
  std::vector<std::pair<long, double>> tv_curve;  // (t, max-over-starts TV)
};

/// Iterates the exact matrix (in double precision) from every start state
/// and returns the first t where the worst-start total variation distance
/// to uniform drops to epsilon, plus the whole curve. The accumulated
/// float error is O(|states| * machine-epsilon * t), negligible against
/// the epsilon = 1/4 regime this feeds.
MixingReport exact_mixing_time(const TransitionMatrix& matrix, const Rational& epsilon,
                               long t_cap = 1 << 20, int jobs = 1);

enum class ScalingFamily {
  DyckRandomTransposition,
  DyckAdjacentTransposition,
  BasisExchangeCatalan,
  BasisExchangeCube,   // L[(DU)^n, (UD)^n]
  BernoulliLaplace,    // m = 2n, r = n
};

const char* to_string(ScalingFamily family);
ChainKernel make_kernel(ScalingFamily family, int n);

struct ScalingRow {
  int n = 0;
  Count state_count;
  double gap = 0.0;
  Rational jerrum_son_lower;  // 2/(m r)
  Rational dyck_upper;        // 4/n
  long t_mix = 0;
};

struct ScalingTable {
  ScalingFamily family;
  Rational epsilon;
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log t_mix against log n; reported, not asserted.
  double tmix_exponent = 0.0;
};

ScalingTable scaling_experiment(ScalingFamily family, int n_min, int n_max,
                                const Rational& epsilon, std::size_t state_cap = kDefaultStateCap,
                                int jobs = 1);

/// Exact-rational Narayana-statistic wrapper used by the certificates.
Rational narayana_statistic_fn(const LatticePath& p);

}  // namespace lpmw
