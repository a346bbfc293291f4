#include "secrecy/kernels.hpp"

#include <cmath>

namespace secrecy::kernels::scalar {

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double neg_xlog2x_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = x[i];
        if (p >= 1e-15) acc -= p * std::log2(p);
    }
    return acc;
}

void scale_inplace(double* x, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

}  // namespace secrecy::kernels::scalar
