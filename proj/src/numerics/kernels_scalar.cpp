#include "kernels_impl.hpp"

namespace encforge::numerics::kernels::scalar {

double dot(std::size_t n, const double* a, const double* b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gemv(std::size_t rows, std::size_t cols, const double* w, const double* x,
          double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(cols, w + r * cols, x);
}

void gemv_acc(std::size_t rows, std::size_t cols, const double* w,
              const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] += dot(cols, w + r * cols, x);
}

void gemv_t_acc(std::size_t rows, std::size_t cols, const double* w,
                const double* g, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double gr = g[r];
    const double* row = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) out[c] += gr * row[c];
  }
}

void ger_acc(std::size_t rows, std::size_t cols, const double* g,
             const double* x, double* grad_w) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double gr = g[r];
    double* row = grad_w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) row[c] += gr * x[c];
  }
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace encforge::numerics::kernels::scalar
