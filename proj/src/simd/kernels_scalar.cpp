#include "hillpt/simd.hpp"

namespace hillpt::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void reflect3_scalar(double* r0, double* r1, double* r2, std::size_t n,
                     double q, double r, double x, double y, double z) {
    for (std::size_t j = 0; j < n; ++j) {
        const double p = r0[j] + q * r1[j] + r * r2[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
        r2[j] -= p * z;
    }
}

void reflect2_scalar(double* r0, double* r1, std::size_t n, double q, double x, double y) {
    for (std::size_t j = 0; j < n; ++j) {
        const double p = r0[j] + q * r1[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Isa::scalar, dot_scalar, axpy_scalar, reflect3_scalar,
                                   reflect2_scalar};
    return table;
}

}  // namespace hillpt::simd
