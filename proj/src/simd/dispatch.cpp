#include <atomic>
#include <cstdlib>
#include <string>

#include "hillpt/simd.hpp"

namespace hillpt::simd {

namespace detail {
#if defined(HILLPT_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(HILLPT_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(HILLPT_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(HILLPT_HAVE_NEON)
    return &detail::neon_table();
#else
    return nullptr;
#endif
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (avx2_kernels()) out.push_back(Isa::avx2);
    if (neon_kernels()) out.push_back(Isa::neon);
    return out;
}

namespace {

const KernelTable* table_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &scalar_kernels();
        case Isa::avx2: return avx2_kernels();
        case Isa::neon: return neon_kernels();
    }
    return nullptr;
}

const KernelTable* initial_table() {
    if (const char* env = std::getenv("HILLPT_SIMD")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa))
                if (const KernelTable* t = table_for(isa)) return t;
    }
    if (const KernelTable* t = avx2_kernels()) return t;
    if (const KernelTable* t = neon_kernels()) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

Isa active_isa() { return active().isa; }

bool set_active_isa(Isa isa) {
    const KernelTable* t = table_for(isa);
    if (!t) return false;
    current().store(t, std::memory_order_relaxed);
    return true;
}

}  // namespace hillpt::simd
