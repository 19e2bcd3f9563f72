#include <doctest.h>

#include <cmath>
#include <vector>

#include "lpmw/analysis.hpp"
#include "lpmw/chains.hpp"
#include "lpmw/kernels.hpp"
#include "lpmw/rng.hpp"

using namespace lpmw;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.unit() - 0.5;
  return v;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree on random data") {
  if (!kernels::avx2_available()) {
    MESSAGE("avx2 not available; dispatch stays scalar");
    return;
  }
  Rng rng(2718);
  for (const std::size_t n : {1u, 3u, 4u, 7u, 64u, 257u, 1000u}) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);

    kernels::force(kernels::Backend::Scalar);
    const double dot_s = kernels::dot(a.data(), b.data(), n);
    const double tv_s = kernels::tv_from_uniform(a.data(), 0.25, n);
    auto axpy_s = b;
    kernels::axpy(0.7, a.data(), axpy_s.data(), n);

    kernels::force(kernels::Backend::Avx2);
    const double dot_v = kernels::dot(a.data(), b.data(), n);
    const double tv_v = kernels::tv_from_uniform(a.data(), 0.25, n);
    auto axpy_v = b;
    kernels::axpy(0.7, a.data(), axpy_v.data(), n);

    kernels::reset();

    CHECK(dot_s == doctest::Approx(dot_v).epsilon(1e-13));
    CHECK(tv_s == doctest::Approx(tv_v).epsilon(1e-13));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(axpy_s[i] == doctest::Approx(axpy_v[i]).epsilon(1e-13));
  }
}

TEST_CASE("vec_times_matrix matches a naive product") {
  Rng rng(99);
  const std::size_t n = 37;
  const auto row = random_vector(n, rng);
  const auto matrix = random_vector(n * n, rng);
  std::vector<double> out(n), naive(n, 0.0);
  kernels::vec_times_matrix(row.data(), matrix.data(), out.data(), n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) naive[j] += row[k] * matrix[k * n + j];
  for (std::size_t j = 0; j < n; ++j)
    CHECK(out[j] == doctest::Approx(naive[j]).epsilon(1e-12));
}

TEST_CASE("tv kernel: exact values on a tiny distribution") {
  const std::vector<double> p{0.5, 0.5, 0.0, 0.0};
  CHECK(kernels::tv_from_uniform(p.data(), 0.25, 4) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  CHECK(kernels::tv_from_uniform(uniform.data(), 0.25, 4) == doctest::Approx(0.0));
}

TEST_CASE("mixing pipeline gives identical answers on both backends") {
  if (!kernels::avx2_available()) return;
  const auto matrix = transition_matrix(ChainKernel::dyck_random_transposition(4));

  kernels::force(kernels::Backend::Scalar);
  const auto scalar = exact_mixing_time(matrix, Rational(1, 4));
  kernels::force(kernels::Backend::Avx2);
  const auto avx2 = exact_mixing_time(matrix, Rational(1, 4));
  kernels::reset();

  CHECK(scalar.t_mix == avx2.t_mix);
  REQUIRE(scalar.tv_curve.size() == avx2.tv_curve.size());
  for (std::size_t i = 0; i < scalar.tv_curve.size(); ++i)
    CHECK(scalar.tv_curve[i].second ==
          doctest::Approx(avx2.tv_curve[i].second).epsilon(1e-12));
}

TEST_CASE("force on an unavailable backend throws; reset restores detection") {
  if (kernels::avx2_available()) {
    kernels::force(kernels::Backend::Avx2);
    CHECK(kernels::active() == kernels::Backend::Avx2);
    kernels::reset();
    CHECK(kernels::active() == kernels::Backend::Avx2);  // auto-detected
  } else {
    CHECK_THROWS(kernels::force(kernels::Backend::Avx2));
    CHECK(kernels::active() == kernels::Backend::Scalar);
  }
  kernels::reset();
}
