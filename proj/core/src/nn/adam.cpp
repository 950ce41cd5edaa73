#include "mimogan/nn/adam.hpp"

#include <cmath>

#include "mimogan/common/errors.hpp"

namespace mimogan::nn {

AdamState AdamState::for_net(const NeuralNet& net, AdamConfig config) {
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0 && config.beta2 >= 0.0 && config.beta2 < 1.0))
    throw DomainError("Adam decay rates must lie in [0, 1)");
  AdamState s;
  s.config = config;
  for (const auto& p : net.params()) {
    s.weight_m.push_back(RealMatrix::Zero(p.weight.rows(), p.weight.cols()));
    s.weight_v.push_back(RealMatrix::Zero(p.weight.rows(), p.weight.cols()));
    s.bias_m.push_back(RealVector::Zero(p.bias.size()));
    s.bias_v.push_back(RealVector::Zero(p.bias.size()));
  }
  return s;
}

namespace {

template <typename Param, typename Moment>
void update(Param& param, Param& grad, Moment& m, Moment& v, const AdamConfig& c, double bc1, double bc2) {
  if (c.l2 != 0.0) grad += c.l2 * param;
  m = c.beta1 * m + (1.0 - c.beta1) * grad;
  v = c.beta2 * v + (1.0 - c.beta2) * grad.cwiseProduct(grad);
  const double lr = c.learning_rate;
  const double eps = c.epsilon;
  param.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
  grad.setZero();
}

}  // namespace

void adam_step(NeuralNet& net, AdamState& state) {
  auto& params = net.params();
  if (params.size() != state.weight_m.size()) throw StateError("Adam state does not match network");
  const auto& c = state.config;
  const double t = static_cast<double>(state.step_count + 1);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    update(p.weight, p.weight_grad, state.weight_m[i], state.weight_v[i], c, bc1, bc2);
    update(p.bias, p.bias_grad, state.bias_m[i], state.bias_v[i], c, bc1, bc2);
  }
  ++state.step_count;
}

}  // namespace mimogan::nn
