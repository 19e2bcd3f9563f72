#include "lpmw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lpmw/kernels.hpp"
#include "lpmw/parallel.hpp"

namespace lpmw {

Rational narayana_statistic_fn(const LatticePath& p) {
  return Rational(narayana_statistic(p));
}

Rational dirichlet_form(const TransitionMatrix& matrix, const StateFunction& f) {
  const std::size_t n = matrix.size();
  std::vector<Rational> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(matrix.states()[i]);

  // pi(x) = 1/n and P(x,y) = count/denom; the half cancels by summing
  // unordered pairs once.
  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t c = matrix.proposal_count(i, j);
      if (c == 0) continue;
      const Rational d = values[i] - values[j];
      sum += d * d * c;
    }
  }
  return sum / (Rational(matrix.denominator()) * Rational(static_cast<int>(n)));
}

Rational variance(const std::vector<LatticePath>& states, const StateFunction& f) {
  if (states.empty()) throw std::invalid_argument("variance: empty state list");
  Rational sum = 0, sum_sq = 0;
  for (const auto& s : states) {
    const Rational v = f(s);
    sum += v;
    sum_sq += v * v;
  }
  const Rational n(static_cast<int>(states.size()));
  const Rational mean = sum / n;
  return sum_sq / n - mean * mean;
}

double log_sobolev_entropy(const std::vector<LatticePath>& states, const StateFunction& f) {
  if (states.empty()) throw std::invalid_argument("log_sobolev_entropy: empty state list");
  double mean_sq = 0.0;
  std::vector<double> squares(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double v = static_cast<double>(f(states[i]));
    squares[i] = v * v;
    mean_sq += squares[i];
  }
  mean_sq /= static_cast<double>(states.size());
  if (mean_sq == 0.0)
    throw std::domain_error("log_sobolev_entropy: f is identically zero");
  const double log_mean = std::log(mean_sq);
  double sum = 0.0;
  for (const double sq : squares) {
    if (sq > 0.0) sum += sq * (std::log(sq) - log_mean);  // 0 log 0 -> 0
  }
  return sum / static_cast<double>(states.size());
}

SpectralReport spectral_gap(const TransitionMatrix& matrix, double tolerance) {
  const std::size_t n = matrix.size();
  if (n < 2) throw std::invalid_argument("spectral_gap: need at least two states");
  if (!matrix.is_irreducible()) throw std::domain_error("spectral_gap: reducible matrix");

  SpectralReport report;
  report.tolerance = tolerance;

  const std::int64_t m = matrix.path_length();
  const std::int64_t r = matrix.path_up_count();
  if (r >= 1) {
    report.jerrum_son_lower = Rational(2, m * r);
    report.log_sobolev_lower = Rational(1, 2 * m * r);
  }

  if (n == 2) {
    // symmetric 2x2 stochastic: eigenvalues 1 and 1 - 2*offdiag
    report.gap_exact = 2 * matrix.entry(0, 1);
    report.gap = static_cast<double>(*report.gap_exact);
  } else {
    Eigen::MatrixXd dense(n, n);
    const auto flat = matrix.dense();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = flat[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("spectral_gap: eigensolver failed");
    const auto& evals = solver.eigenvalues();  // ascending
    const double top = evals[static_cast<Eigen::Index>(n - 1)];
    const double second = evals[static_cast<Eigen::Index>(n - 2)];
    if (std::fabs(top - 1.0) > std::max(tolerance, 1e-8) ||
        evals[0] < -1.0 - std::max(tolerance, 1e-8))
      throw std::runtime_error("spectral_gap: spectrum outside [-1, 1]");
    report.gap = 1.0 - second;
  }

  // Variational certificates from the even-index down-step statistic.
  const Rational dir = dirichlet_form(matrix, narayana_statistic_fn);
  const Rational var = variance(matrix.states(), narayana_statistic_fn);
  if (var != 0) {
    report.test_fn_upper = dir / var;
    const double entropy = log_sobolev_entropy(matrix.states(), narayana_statistic_fn);
    if (entropy > 0.0) report.alpha_upper = static_cast<double>(dir) / entropy;
  }
  return report;
}

Rational certify_upper_bound(const ChainKernel& kernel, std::size_t state_cap) {
  const TransitionMatrix matrix = transition_matrix(kernel, state_cap);
  const Rational var = variance(matrix.states(), narayana_statistic_fn);
  if (var == 0)
    throw std::domain_error("certify_upper_bound: test function is constant on this space");
  return dirichlet_form(matrix, narayana_statistic_fn) / var;
}

MixingReport exact_mixing_time(const TransitionMatrix& matrix, const Rational& epsilon,
                               long t_cap, int jobs) {
  const std::size_t n = matrix.size();
  MixingReport report;
  report.epsilon = epsilon;
  const double eps = static_cast<double>(epsilon);
  const double uniform = 1.0 / static_cast<double>(n);

  const std::vector<double> P = matrix.dense();
  // dist holds one distribution row per start state: dist = P^t.
  std::vector<double> dist(n * n, 0.0), next(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 1.0;

  std::vector<double> row_tv(n, 0.0);
  for (long t = 0;; ++t) {
    parallel_for(n, jobs, [&](std::size_t i) {
      row_tv[i] = kernels::tv_from_uniform(dist.data() + i * n, uniform, n);
    });
    const double tv = *std::max_element(row_tv.begin(), row_tv.end());
    report.tv_curve.emplace_back(t, tv);
    if (tv <= eps) {
      report.t_mix = t;
      return report;
    }
    if (t >= t_cap) throw std::runtime_error("exact_mixing_time: step cap exceeded");
    parallel_for(n, jobs, [&](std::size_t i) {
      kernels::vec_times_matrix(dist.data() + i * n, P.data(), next.data() + i * n, n);
    });
    dist.swap(next);
  }
}

const char* to_string(ScalingFamily family) {
  switch (family) {
    case ScalingFamily::DyckRandomTransposition: return "dyck-rt";
    case ScalingFamily::DyckAdjacentTransposition: return "dyck-adj";
    case ScalingFamily::BasisExchangeCatalan: return "basis-exchange";
    case ScalingFamily::BasisExchangeCube: return "basis-exchange-cube";
    case ScalingFamily::BernoulliLaplace: return "bernoulli-laplace";
  }
  return "?";
}

ChainKernel make_kernel(ScalingFamily family, int n) {
  switch (family) {
    case ScalingFamily::DyckRandomTransposition:
      return ChainKernel::dyck_random_transposition(n);
    case ScalingFamily::DyckAdjacentTransposition:
      return ChainKernel::dyck_adjacent_transposition(n);
    case ScalingFamily::BasisExchangeCatalan:
      return ChainKernel::basis_exchange(catalan_matroid(n));
    case ScalingFamily::BasisExchangeCube:
      return ChainKernel::basis_exchange(cube_matroid(n));
    case ScalingFamily::BernoulliLaplace:
      return ChainKernel::bernoulli_laplace(2 * n, n);
  }
  throw std::invalid_argument("make_kernel: unknown family");
}

ScalingTable scaling_experiment(ScalingFamily family, int n_min, int n_max,
                                const Rational& epsilon, std::size_t state_cap, int jobs) {
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("scaling_experiment: need 2 <= n_min <= n_max");
  ScalingTable table;
  table.family = family;
  table.epsilon = epsilon;
  for (int n = n_min; n <= n_max; ++n) {
    const ChainKernel kernel = make_kernel(family, n);
    const TransitionMatrix matrix = transition_matrix(kernel, state_cap);
    const SpectralReport spectral = spectral_gap(matrix);
    const MixingReport mixing = exact_mixing_time(matrix, epsilon, 1 << 20, jobs);
    ScalingRow row;
    row.n = n;
    row.state_count = kernel.state_count();
    row.gap = spectral.gap;
    row.jerrum_son_lower = spectral.jerrum_son_lower;
    row.dyck_upper = Rational(4, n);
    row.t_mix = mixing.t_mix;
    table.rows.push_back(std::move(row));
  }

  // log-log least squares on rows with t_mix >= 1
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& row : table.rows) {
    if (row.t_mix < 1) continue;
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(static_cast<double>(row.t_mix));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  table.tmix_exponent =
      k >= 2 ? (k * sxy - sx * sy) / (k * sxx - sx * sx) : 0.0;
  return table;
}

}  // namespace lpmw
