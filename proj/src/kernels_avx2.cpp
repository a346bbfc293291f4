#include "secrecy/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>

// AVX2 variants. log2 is computed per lane from the exponent/mantissa split:
// p = m * 2^e with m in [sqrt(2)/2, sqrt(2)], r = (m-1)/(m+1),
// ln m = 2*atanh(r) summed through r^21 (truncation ~1e-19, below rounding).

namespace secrecy::kernels::avx2 {

namespace {

constexpr double kInvLn2 = 1.4426950408889634073599246810018921;
constexpr double kSqrt2 = 1.4142135623730950488016887242096981;

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    lo = _mm_add_sd(lo, sh);
    return _mm_cvtsd_f64(lo);
}

// log2 of 4 positive normal doubles
inline __m256d log2_pd(__m256d p) {
    const __m256i bits = _mm256_castpd_si256(p);
    // exponent: bits >> 52, low 11 bits, biased by 1023
    __m256i eb = _mm256_srli_epi64(bits, 52);
    eb = _mm256_and_si256(eb, _mm256_set1_epi64x(0x7ff));
    // pack the four 64-bit lanes' low words into one 128-bit vector of int32
    const __m256i perm = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    __m128i e32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(eb, perm));
    __m256d e = _mm256_cvtepi32_pd(e32);
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

    // mantissa in [1,2)
    __m256i mb = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
    mb = _mm256_or_si256(mb, _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mb);

    // rescale to [sqrt2/2, sqrt2]
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), big);

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d r = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d t = _mm256_mul_pd(r, r);

    // atanh(r)/r = 1 + t/3 + t^2/5 + ... + t^10/21
    __m256d acc = _mm256_set1_pd(1.0 / 21.0);
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 19.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 17.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 15.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 13.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 11.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 9.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 7.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 5.0));
    acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(1.0 / 3.0));
    acc = _mm256_fmadd_pd(acc, t, one);

    // log2 p = 2*r*acc/ln2 + e
    __m256d lnm = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), r), acc);
    return _mm256_fmadd_pd(lnm, _mm256_set1_pd(kInvLn2), e);
}

}  // namespace

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
    const __m256d thr = _mm256_set1_pd(1e-15);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_loadu_pd(x + i);
        __m256d valid = _mm256_cmp_pd(p, thr, _CMP_GE_OQ);
        if (_mm256_testz_pd(valid, valid)) continue;
        // clamp masked lanes to 1.0 so log2 stays finite, then zero them out
        __m256d p_safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), p, valid);
        __m256d contrib = _mm256_mul_pd(p_safe, log2_pd(p_safe));
        contrib = _mm256_and_pd(contrib, valid);
        acc = _mm256_sub_pd(acc, contrib);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double p = x[i];
        if (p >= 1e-15) s -= p * std::log2(p);
    }
    return s;
}

void scale_inplace(double* x, std::size_t n, double s) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vs));
    for (; i < n; ++i) x[i] *= s;
}

}  // namespace secrecy::kernels::avx2
