#include "secrecy/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace secrecy::kernels {

namespace {

Impl resolve_impl() {
#if defined(SECRECY_BUILD_AVX2)
    const char* env = std::getenv("SECRECY_TOOLKIT_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Impl::Scalar;
        if (std::strcmp(env, "avx2") == 0) return Impl::Avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Impl::Avx2;
#endif
    return Impl::Scalar;
}

}  // namespace

Impl active_impl() {
    static const Impl impl = resolve_impl();
    return impl;
}

const char* impl_name(Impl i) { return i == Impl::Avx2 ? "avx2" : "scalar"; }

double sum(const double* x, std::size_t n) {
#if defined(SECRECY_BUILD_AVX2)
    if (active_impl() == Impl::Avx2) return avx2::sum(x, n);
#endif
    return scalar::sum(x, n);
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
#if defined(SECRECY_BUILD_AVX2)
    if (active_impl() == Impl::Avx2) return avx2::neg_xlog2x_sum(x, n);
#endif
    return scalar::neg_xlog2x_sum(x, n);
}

void scale_inplace(double* x, std::size_t n, double s) {
#if defined(SECRECY_BUILD_AVX2)
    if (active_impl() == Impl::Avx2) {
        avx2::scale_inplace(x, n, s);
        return;
    }
#endif
    scalar::scale_inplace(x, n, s);
}

}  // namespace secrecy::kernels
