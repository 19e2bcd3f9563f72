#pragma once

#include <cstddef>

namespace lpmw::kernels {

/// Dense double-precision primitives behind the spectral/mixing loops.
/// A scalar reference implementation always exists; an AVX2 variant is
/// selected at runtime when the CPU supports it. The two are equivalence-
/// tested; FMA reassociation keeps them within ~1e-13 relative of each
/// other, which is far inside every tolerance used downstream.
enum class Backend { Scalar, Avx2 };

/// Backend in use (auto-detected on first call).
Backend active();

/// Test hook: pin the backend. Throws if the requested backend is
/// unavailable on this machine. `reset()` restores auto-detection.
void force(Backend b);
void reset();

const char* name(Backend b);
bool avx2_available();

double dot(const double* a, const double* b, std::size_t n);

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// (1/2) * sum_i |p[i] - uniform_mass|
double tv_from_uniform(const double* p, double uniform_mass, std::size_t n);

/// out = row * M, with M row-major n x n. Built on axpy.
void vec_times_matrix(const double* row, const double* matrix, double* out, std::size_t n);

}  // namespace lpmw::kernels
