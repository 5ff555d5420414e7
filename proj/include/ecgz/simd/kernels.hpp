#pragma once

// Data-parallel inner loops shared by the transforms and the quantizer.
//
// Every kernel has a scalar reference and optional SIMD variants. Variants
// must be bit-identical to the reference: same operation order per element,
// no FMA contraction, no reassociation. The active table is chosen at
// runtime from what the CPU supports and can be overridden for testing.

#include <cstddef>
#include <string_view>
#include <vector>

namespace ecgz::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  /// dst[i] += coef * (a[i] + b[i]). `a` and `b` may alias each other but not `dst`.
  void (*lift)(double* dst, const double* a, const double* b, double coef, std::size_t n);
  /// x[i] *= factor
  void (*scale)(double* x, double factor, std::size_t n);
  /// out[i] += row[i] * weight
  void (*accumulate)(double* out, const double* row, double weight, std::size_t n);
  /// out[i] = floor(b[i] / delta + 0.5); integer-valued doubles.
  void (*quantize)(const double* b, double delta, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(ECGZ_WITH_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(ECGZ_WITH_NEON)
const KernelTable& neon_kernels();
#endif

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

/// Table for a specific ISA; throws ArgumentError if unavailable.
const KernelTable& kernels_for(Isa isa);

/// Currently selected table. Defaults to the widest available ISA.
const KernelTable& active();

/// Overrides the runtime selection process-wide. Returns false if unavailable.
bool select_isa(Isa isa);
void reset_isa();

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);

}  // namespace ecgz::simd
