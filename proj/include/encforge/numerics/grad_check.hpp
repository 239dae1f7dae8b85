#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "encforge/numerics/autodiff.hpp"

namespace encforge::numerics {

// Builds a scalar loss on the given trace from the current parameter values.
// Must be deterministic: any noise has to be frozen by the caller.
using LossBuilder = std::function<Var(GradContext&, const ParamStore&)>;

struct GradCheckOptions {
  double eps = 1e-6;
  double tol = 1e-6;
  // Denominator floor of the relative error, so elements whose true
  // gradient is ~0 are judged by absolute error at this scale.
  double abs_floor = 1e-8;
  // Keep at most this many failures in the report.
  std::size_t max_failures = 32;
};

struct GradCheckFailure {
  std::string param;
  std::size_t index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  std::size_t checked = 0;
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  bool nondeterministic = false;
  std::size_t failure_count = 0;
  std::vector<GradCheckFailure> failures;
  bool passed = false;
};

// Compares the analytic gradient of every parameter element against the
// central difference (f(w+eps) - f(w-eps)) / (2 eps). Parameter values are
// restored exactly; gradient slots are left zeroed.
GradCheckReport grad_check(const LossBuilder& loss_fn, ParamStore& params,
                           const GradCheckOptions& opts = {});

double relative_error(double analytic, double numeric, double abs_floor);

}  // namespace encforge::numerics
