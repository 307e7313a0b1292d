#include "egan/adam.hpp"

#include <cmath>
#include <string>

#include "egan/errors.hpp"

namespace egan {

AdamState AdamState::zeros_like(const std::vector<matrix_t>& params) {
  AdamState s;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const matrix_t& p : params) {
    s.m.push_back(matrix_t::Zero(p.rows(), p.cols()));
    s.v.push_back(matrix_t::Zero(p.rows(), p.cols()));
  }
  return s;
}

void adam_step(std::vector<matrix_t>& params, const std::vector<matrix_t>& grads,
               AdamState& state, const AdamConfig& cfg) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size())
    throw StructuralError("adam_step: parameter/gradient/state count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i].rows() != params[i].rows() || grads[i].cols() != params[i].cols())
      throw StructuralError("adam_step: gradient shape mismatch at tensor " +
                            std::to_string(i));
  }

  state.t += 1;
  const scalar_t bc1 = 1.0 - std::pow(cfg.beta1, static_cast<scalar_t>(state.t));
  const scalar_t bc2 = 1.0 - std::pow(cfg.beta2, static_cast<scalar_t>(state.t));

  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& m = state.m[i];
    auto& v = state.v[i];
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grads[i];
    v = (cfg.beta2 * v.array() + (1.0 - cfg.beta2) * grads[i].array().square()).matrix();
    // m_hat / (sqrt(v_hat) + eps), with 0/0 treated as no update
    const scalar_t eps = cfg.eps;
    params[i].array() -= cfg.alpha * (m.array() / bc1).binaryExpr(
                             (v.array() / bc2),
                             [eps](scalar_t mh, scalar_t vh) {
                               const scalar_t denom = std::sqrt(vh) + eps;
                               return denom > 0 ? mh / denom : scalar_t{0};
                             });
    if (!params[i].allFinite())
      throw NumericError("adam_step: non-finite parameters at tensor " +
                         std::to_string(i));
  }
}

}  // namespace egan
