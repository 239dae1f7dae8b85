#pragma once

#include <cstddef>

namespace encforge::numerics::kernels {

namespace scalar {
double dot(std::size_t n, const double* a, const double* b);
void gemv(std::size_t rows, std::size_t cols, const double* w, const double* x,
          double* y);
void gemv_acc(std::size_t rows, std::size_t cols, const double* w,
              const double* x, double* y);
void gemv_t_acc(std::size_t rows, std::size_t cols, const double* w,
                const double* g, double* out);
void ger_acc(std::size_t rows, std::size_t cols, const double* g,
             const double* x, double* grad_w);
void axpy(std::size_t n, double alpha, const double* x, double* y);
}  // namespace scalar

#if defined(ENCFORGE_HAVE_AVX2)
namespace avx2 {
double dot(std::size_t n, const double* a, const double* b);
void gemv(std::size_t rows, std::size_t cols, const double* w, const double* x,
          double* y);
void gemv_acc(std::size_t rows, std::size_t cols, const double* w,
              const double* x, double* y);
void gemv_t_acc(std::size_t rows, std::size_t cols, const double* w,
                const double* g, double* out);
void ger_acc(std::size_t rows, std::size_t cols, const double* g,
             const double* x, double* grad_w);
void axpy(std::size_t n, double alpha, const double* x, double* y);
}  // namespace avx2
#endif

}  // namespace encforge::numerics::kernels
