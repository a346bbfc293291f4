// Arithmetic reduction kernels shared by the information-measure code.
//
// Each kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2 variant. The dispatched entry points select an implementation at
// runtime (CPU probe, overridable with SECRECY_TOOLKIT_SIMD=scalar|avx2).
// Scalar and AVX2 variants are equivalence-tested against each other.
//
// Semantics shared by all implementations:
//   - entries below 1e-15 contribute zero to log terms (0*log 0 = 0),
//   - inputs are probabilities, assumed non-negative.

#pragma once

#include <cstddef>

namespace secrecy::kernels {

enum class Impl { Scalar, Avx2 };

// Implementation chosen for the dispatched entry points.
Impl active_impl();
const char* impl_name(Impl i);

// sum of x[0..n)
double sum(const double* x, std::size_t n);

// sum of -x*log2(x); entries < 1e-15 contribute 0
double neg_xlog2x_sum(const double* x, std::size_t n);

// x[i] *= s
void scale_inplace(double* x, std::size_t n, double s);

namespace scalar {
double sum(const double* x, std::size_t n);
double neg_xlog2x_sum(const double* x, std::size_t n);
void scale_inplace(double* x, std::size_t n, double s);
}  // namespace scalar

#if defined(SECRECY_BUILD_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double neg_xlog2x_sum(const double* x, std::size_t n);
void scale_inplace(double* x, std::size_t n, double s);
}  // namespace avx2
#endif

}  // namespace secrecy::kernels
