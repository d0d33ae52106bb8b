#pragma once

// Data-parallel inner loops used by the dense linear algebra.
//
// Every kernel has a scalar reference implementation; SIMD variants (AVX2+FMA
// on x86-64, NEON on aarch64) are compiled into separate translation units
// and selected once at runtime. The HILLPT_SIMD environment variable
// (scalar | avx2 | neon) overrides the automatic choice.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hillpt::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Function table for one instruction set. Raw pointers on purpose: the
/// tables are filled by translation units compiled with different target
/// flags and must not share inline helpers.
struct KernelTable {
    Isa isa;
    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// Householder update of three rows, as used by the double-shift QR sweep:
    ///   p = r0[j] + q*r1[j] + r*r2[j];  r0[j] -= p*x;  r1[j] -= p*y;  r2[j] -= p*z
    void (*reflect3)(double* r0, double* r1, double* r2, std::size_t n,
                     double q, double r, double x, double y, double z);
    /// Two-row variant of reflect3 (the r2 terms dropped).
    void (*reflect2)(double* r0, double* r1, std::size_t n, double q, double x, double y);
};

const KernelTable& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

const KernelTable& active();
Isa active_isa();
/// Switches the process-wide table. Returns false if `isa` is unavailable.
bool set_active_isa(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace hillpt::simd
