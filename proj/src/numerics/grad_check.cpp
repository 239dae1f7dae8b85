#include "encforge/numerics/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace encforge::numerics {

namespace {

double evaluate(const LossBuilder& loss_fn, const ParamStore& params) {
  GradContext ctx(/*tracing=*/false);
  return loss_fn(ctx, params).value()[0];
}

}  // namespace

double relative_error(double analytic, double numeric, double abs_floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), abs_floor});
  return std::abs(analytic - numeric) / denom;
}

GradCheckReport grad_check(const LossBuilder& loss_fn, ParamStore& params,
                           const GradCheckOptions& opts) {
  GradCheckReport report;

  if (evaluate(loss_fn, params) != evaluate(loss_fn, params)) {
    report.nondeterministic = true;
    return report;
  }

  params.zero_grad();
  {
    GradContext ctx;
    Var loss = loss_fn(ctx, params);
    ctx.backward(loss, params);
  }
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (const auto& e : params) analytic.push_back(e.grad);
  params.zero_grad();

  for (std::size_t p = 0; p < params.size(); ++p) {
    auto& entry = params.entry(p);
    for (std::size_t i = 0; i < entry.value.size(); ++i) {
      const double saved = entry.value[i];
      entry.value[i] = saved + opts.eps;
      const double plus = evaluate(loss_fn, params);
      entry.value[i] = saved - opts.eps;
      const double minus = evaluate(loss_fn, params);
      entry.value[i] = saved;

      const double numeric = (plus - minus) / (2.0 * opts.eps);
      const double a = analytic[p][i];
      const double rel = relative_error(a, numeric, opts.abs_floor);
      ++report.checked;
      if (report.worst_param.empty() || rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = entry.name;
        report.worst_index = i;
      }
      if (rel > opts.tol) {
        ++report.failure_count;
        if (report.failures.size() < opts.max_failures) {
          report.failures.push_back({entry.name, i, a, numeric, rel});
        }
      }
    }
  }
  report.passed = report.failure_count == 0;
  return report;
}

}  // namespace encforge::numerics
