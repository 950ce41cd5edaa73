#include "mimogan/nn/network.hpp"

#include <cmath>
#include <string>

#include "mimogan/common/errors.hpp"

namespace mimogan::nn {

std::string_view to_string(LayerKind kind) noexcept {
  switch (kind) {
    case LayerKind::dense: return "dense";
    case LayerKind::leaky_relu: return "leaky_relu";
    case LayerKind::dropout: return "dropout";
    case LayerKind::tanh: return "tanh";
  }
  return "unknown";
}

RealMatrix dense_forward(const RealMatrix& x, const RealMatrix& weight, const RealVector& bias) {
  if (x.cols() != weight.rows() || bias.size() != weight.cols()) {
    throw DimensionError("dense_forward: input " + shape_str(x.rows(), x.cols()) + " vs weight " +
                         shape_str(weight.rows(), weight.cols()) + " and bias " +
                         std::to_string(bias.size()));
  }
  RealMatrix out(x.rows(), weight.cols());
  out.noalias() = x * weight;
  out.rowwise() += bias.transpose();
  return out;
}

namespace {

void validate_spec(const LayerSpec& spec, std::size_t index) {
  const auto where = "layer " + std::to_string(index) + ": ";
  switch (spec.kind) {
    case LayerKind::dense:
      if (spec.width <= 0) throw DimensionError(where + "dense width must be positive");
      break;
    case LayerKind::leaky_relu:
      if (!(spec.slope > 0.0)) throw DomainError(where + "leaky_relu slope must be > 0");
      break;
    case LayerKind::dropout:
      if (!(spec.drop_rate >= 0.0 && spec.drop_rate < 1.0))
        throw DomainError(where + "dropout rate must lie in [0, 1)");
      break;
    case LayerKind::tanh:
      break;
  }
}

// Keep-mask for one dropout application. A single engine draw seeds a
// counter-based stream: element k keeps its unit iff the top 53 bits of
// mix64(seed + k * golden) are >= rate * 2^53, i.e. a uniform [0, 1) draw
// is >= rate. The loop has no dependency chain, so it vectorizes.
void fill_dropout_mask(RealMatrix& mask, double rate, std::uint64_t seed) {
  const auto threshold = static_cast<std::uint64_t>(std::ceil(rate * 0x1.0p53));
  const double keep_scale = 1.0 / (1.0 - rate);
  double* out = mask.data();
  const Eigen::Index n = mask.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::uint64_t bits = mix64(seed + static_cast<std::uint64_t>(k) * 0x9e3779b97f4a7c15ULL) >> 11;
    out[k] = bits >= threshold ? keep_scale : 0.0;
  }
}

}  // namespace

NeuralNet NeuralNet::zeros(Eigen::Index input_width, std::vector<LayerSpec> layers) {
  NeuralNet net;
  net.input_width_ = input_width;
  net.specs_ = std::move(layers);
  if (input_width <= 0) throw DimensionError("network input width must be positive");
  Eigen::Index width = input_width;
  for (std::size_t i = 0; i < net.specs_.size(); ++i) {
    const auto& spec = net.specs_[i];
    validate_spec(spec, i);
    if (spec.kind == LayerKind::dense) {
      net.dense_slot_.push_back(static_cast<int>(net.params_.size()));
      DenseParams p;
      p.weight = RealMatrix::Zero(width, spec.width);
      p.bias = RealVector::Zero(spec.width);
      p.weight_grad = RealMatrix::Zero(width, spec.width);
      p.bias_grad = RealVector::Zero(spec.width);
      net.params_.push_back(std::move(p));
      width = spec.width;
    } else {
      net.dense_slot_.push_back(-1);
    }
  }
  net.output_width_ = width;
  return net;
}

NeuralNet::NeuralNet(Eigen::Index input_width, std::vector<LayerSpec> layers, Rng& init_rng)
    : NeuralNet(zeros(input_width, std::move(layers))) {
  for (auto& p : params_) {
    const double fan_in = static_cast<double>(p.weight.rows());
    const double fan_out = static_cast<double>(p.weight.cols());
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index r = 0; r < p.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < p.weight.cols(); ++c) p.weight(r, c) = dist(init_rng);
  }
}

std::size_t NeuralNet::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p.weight.size() + p.bias.size());
  return n;
}

ForwardTrace NeuralNet::run(const RealMatrix& x, Mode mode, Rng* rng, bool keep_trace) const {
  if (x.cols() != input_width_) {
    throw DimensionError("network forward: input " + shape_str(x.rows(), x.cols()) +
                         " but network expects width " + std::to_string(input_width_));
  }
  if (!std::isfinite(x.sum()) && !x.allFinite()) throw NumericError("non-finite network input");
  ForwardTrace trace;
  if (keep_trace) {
    trace.inputs.reserve(specs_.size());
    trace.masks.resize(specs_.size());
  }
  RealMatrix h = x;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto& spec = specs_[i];
    RealMatrix next;
    switch (spec.kind) {
      case LayerKind::dense: {
        const auto& p = params_[static_cast<std::size_t>(dense_slot_[i])];
        next = dense_forward(h, p.weight, p.bias);
        break;
      }
      case LayerKind::leaky_relu: {
        // Branchless: random activations make a per-element branch mispredict.
        if (spec.slope <= 1.0)
          next = h.cwiseMax(spec.slope * h);
        else
          next = h.cwiseMin(spec.slope * h);
        break;
      }
      case LayerKind::tanh:
        next = h.array().tanh().matrix();
        break;
      case LayerKind::dropout: {
        if (mode == Mode::eval || spec.drop_rate == 0.0) {
          if (!keep_trace) continue;
          next = h;
          break;
        }
        if (rng == nullptr) throw StateError("train-mode dropout requires a random engine");
        RealMatrix mask(h.rows(), h.cols());
        fill_dropout_mask(mask, spec.drop_rate, (*rng)());
        next = h.cwiseProduct(mask);
        if (keep_trace) trace.masks[i] = std::move(mask);
        break;
      }
    }
    // A finite sum implies finite entries; only the rare failure pays for the full scan.
    if (spec.kind == LayerKind::dense && !std::isfinite(next.sum()) && !next.allFinite()) {
      throw NumericError("non-finite activation at layer " + std::to_string(i) + " (" +
                         std::string(to_string(spec.kind)) + ")");
    }
    if (keep_trace) trace.inputs.push_back(std::move(h));
    h = std::move(next);
  }
  trace.output = std::move(h);
  return trace;
}

RealMatrix NeuralNet::forward(const RealMatrix& x, Mode mode, Rng* rng) {
  if (mode == Mode::eval) return run(x, mode, nullptr, false).output;
  cache_ = run(x, mode, rng, true);
  return cache_->output;
}

RealMatrix NeuralNet::predict(const RealMatrix& x) const { return run(x, Mode::eval, nullptr, false).output; }

ForwardTrace NeuralNet::forward_traced(const RealMatrix& x, Rng& rng) const {
  return run(x, Mode::train, &rng, true);
}

RealMatrix NeuralNet::backward(const RealMatrix& upstream) {
  if (!cache_) throw StateError("backward called without a prior train-mode forward");
  return backward(*cache_, upstream, GradTarget::params_and_input);
}

RealMatrix NeuralNet::backward(const ForwardTrace& trace, const RealMatrix& upstream, GradTarget target) {
  if (trace.inputs.size() != specs_.size()) throw StateError("trace does not belong to this network");
  if (upstream.rows() != trace.output.rows() || upstream.cols() != trace.output.cols()) {
    throw DimensionError("backward: upstream " + shape_str(upstream.rows(), upstream.cols()) +
                         " vs output " + shape_str(trace.output.rows(), trace.output.cols()));
  }
  RealMatrix g = upstream;
  for (std::size_t idx = specs_.size(); idx-- > 0;) {
    const auto& spec = specs_[idx];
    const RealMatrix& in = trace.inputs[idx];
    switch (spec.kind) {
      case LayerKind::dense: {
        auto& p = params_[static_cast<std::size_t>(dense_slot_[idx])];
        if (target == GradTarget::params_and_input) {
          p.weight_grad.noalias() += in.transpose() * g;
          p.bias_grad += g.colwise().sum().transpose();
        }
        RealMatrix dx(g.rows(), p.weight.rows());
        dx.noalias() = g * p.weight.transpose();
        g = std::move(dx);
        break;
      }
      case LayerKind::leaky_relu: {
        const double slope = spec.slope;
        g = (g.array() * (slope + (1.0 - slope) * (in.array() > 0.0).cast<double>())).matrix();
        break;
      }
      case LayerKind::tanh: {
        const RealMatrix& out = idx + 1 < specs_.size() ? trace.inputs[idx + 1] : trace.output;
        g = (g.array() * (1.0 - out.array().square())).matrix();
        break;
      }
      case LayerKind::dropout: {
        const RealMatrix& mask = trace.masks[idx];
        if (mask.size() != 0) g = g.cwiseProduct(mask);
        break;
      }
    }
  }
  return g;
}

void NeuralNet::zero_grad() {
  for (auto& p : params_) {
    p.weight_grad.setZero();
    p.bias_grad.setZero();
  }
}

}  // namespace mimogan::nn
