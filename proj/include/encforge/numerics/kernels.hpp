#pragma once

// Dense inner-loop kernels behind the tensor ops.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at startup from CPUID and
// can be pinned with ENCFORGE_KERNELS=scalar|avx2 or set_backend(). Results of
// the two backends agree to rounding (summation order differs) and are
// checked against each other in the kernel equivalence tests.

#include <cstddef>
#include <string_view>

namespace encforge::numerics::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(std::size_t n, const double* a, const double* b);
  // y = W x, W is rows × cols row-major
  void (*gemv)(std::size_t rows, std::size_t cols, const double* w,
               const double* x, double* y);
  // y += W x
  void (*gemv_acc)(std::size_t rows, std::size_t cols, const double* w,
                   const double* x, double* y);
  // out += Wᵀ g
  void (*gemv_t_acc)(std::size_t rows, std::size_t cols, const double* w,
                     const double* g, double* out);
  // G += g xᵀ
  void (*ger_acc)(std::size_t rows, std::size_t cols, const double* g,
                  const double* x, double* grad_w);
  // y += alpha x
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

const KernelTable& active() noexcept;
bool backend_available(Backend b) noexcept;
// Throws PreconditionError if the backend is unavailable on this CPU.
void set_backend(Backend b);
Backend parse_backend(std::string_view name);

}  // namespace encforge::numerics::kernels
