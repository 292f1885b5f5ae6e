#include "gdist/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "gdist/error.hpp"

namespace gdist::kernels {

#if defined(GDIST_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

namespace {

#if defined(GDIST_HAVE_AVX2)
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
#endif

const KernelTable* initial_table() {
    if (const char* env = std::getenv("GRAPHON_DIST_SIMD")) {
        if (std::string(env) == "scalar") return &scalar_table();
    }
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{initial_table()};
    return slot;
}

} // namespace

const KernelTable* avx2_table() {
#if defined(GDIST_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&scalar_table()};
    if (const KernelTable* t = avx2_table()) out.push_back(t);
    return out;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void select(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        active_slot().store(&scalar_table());
        return;
    case Isa::Avx2:
        if (const KernelTable* t = avx2_table()) {
            active_slot().store(t);
            return;
        }
        throw InputError("AVX2 kernels are not available on this machine");
    }
}

std::string_view isa_name(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

} // namespace gdist::kernels
