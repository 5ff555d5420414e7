#include <atomic>
#include <string>

#include "ecgz/error.hpp"
#include "ecgz/simd/kernels.hpp"

namespace ecgz::simd {

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(ECGZ_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(ECGZ_WITH_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* best_table() {
#if defined(ECGZ_WITH_AVX2)
  if (cpu_supports(Isa::avx2)) return &avx2_kernels();
#endif
#if defined(ECGZ_WITH_NEON)
  return &neon_kernels();
#endif
  return &scalar_kernels();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

bool isa_available(Isa isa) { return cpu_supports(isa); }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw ArgumentError("ISA '" + std::string(isa_name(isa)) + "' not available");
  switch (isa) {
#if defined(ECGZ_WITH_AVX2)
    case Isa::avx2:
      return avx2_kernels();
#endif
#if defined(ECGZ_WITH_NEON)
    case Isa::neon:
      return neon_kernels();
#endif
    default:
      return scalar_kernels();
  }
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = best_table();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool select_isa(Isa isa) {
  if (!isa_available(isa)) return false;
  g_active.store(&kernels_for(isa), std::memory_order_release);
  return true;
}

void reset_isa() { g_active.store(best_table(), std::memory_order_release); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw ArgumentError("unknown ISA '" + std::string(name) + "'");
}

}  // namespace ecgz::simd
