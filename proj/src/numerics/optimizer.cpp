#include "encforge/numerics/optimizer.hpp"

#include <cmath>

#include "encforge/error.hpp"

namespace encforge::numerics {

void optimizer_step(ParamStore& params, const AdamConfig& cfg, OptState& state) {
  if (!params.has_gradients()) {
    throw PreconditionError("optimizer_step: gradients not populated");
  }
  if (state.first_moment.size() != params.size()) {
    state.first_moment.clear();
    state.second_moment.clear();
    for (const auto& e : params) {
      state.first_moment.push_back(Tensor::zeros_like(e.value));
      state.second_moment.push_back(Tensor::zeros_like(e.value));
    }
    state.step = 0;
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(cfg.beta1, t);
  const double correction2 = 1.0 - std::pow(cfg.beta2, t);

  for (std::size_t p = 0; p < params.size(); ++p) {
    auto& e = params.entry(p);
    Tensor& m = state.first_moment[p];
    Tensor& v = state.second_moment[p];
    for (std::size_t i = 0; i < e.value.size(); ++i) {
      const double g = e.grad[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      e.value[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
    require_finite(e.value, "optimizer_step");
  }
  params.zero_grad();
}

}  // namespace encforge::numerics
