#include "mimogan/detectors/losses.hpp"

#include "mimogan/common/errors.hpp"

namespace mimogan::detectors {

RealMatrix concat_pairs(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("concat_pairs: " + shape_str(a.rows(), a.cols()) + " vs " +
                                                 shape_str(b.rows(), b.cols()));
  RealMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

double d_loss_value(const RealMatrix& d_real, const RealMatrix& d_fake, bool inverted) {
  if (d_real.size() != d_fake.size() || d_real.size() == 0) throw DimensionError("d_loss: real/fake batch mismatch");
  const double t_real = inverted ? -1.0 : 1.0;
  const double t_fake = -t_real;
  const double sum = (d_real.array() - t_real).square().sum() + (d_fake.array() - t_fake).square().sum();
  return sum / static_cast<double>(d_real.rows());
}

namespace {
double l1_sum(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("l1 term: shape mismatch");
  return (a - b).cwiseAbs().sum();
}

RealMatrix l1_grad(const RealMatrix& a, const RealMatrix& b, double scale) {
  return (a - b).unaryExpr([scale](double d) { return d > 0.0 ? scale : (d < 0.0 ? -scale : 0.0); });
}
}  // namespace

double g_loss_value(const GeneratorOutputs& o, const RealMatrix& s, const RealMatrix& y, const LossWeights& w) {
  const double m = static_cast<double>(s.rows());
  double sum = 0.0;
  if (o.d_fwd.size()) sum += o.d_fwd.squaredNorm();
  if (o.d_bwd.size()) sum += o.d_bwd.squaredNorm();
  if (o.fwd.size()) sum += w.alpha * l1_sum(o.fwd, y);
  if (o.bwd.size()) sum += w.beta * l1_sum(o.bwd, s);
  if (o.cyc_s.size()) sum += w.gamma * l1_sum(o.cyc_s, s);
  if (o.cyc_y.size()) sum += w.delta * l1_sum(o.cyc_y, y);
  return sum / m;
}

double d_loss(const nn::NeuralNet& d, const RealMatrix& real_pairs, const RealMatrix& fake_pairs, bool inverted) {
  return d_loss_value(d.predict(real_pairs), d.predict(fake_pairs), inverted);
}

double g_loss(const DetectorEnsemble& ens, const RealMatrix& s, const RealMatrix& y, const LossWeights& w) {
  GeneratorOutputs o;
  o.bwd = ens.g_y2s.predict(y);
  if (ens.bidirectional()) {
    o.fwd = ens.g_s2y.predict(s);
    o.cyc_s = ens.g_y2s.predict(o.fwd);
    o.cyc_y = ens.g_s2y.predict(o.bwd);
  }
  if (ens.adversarial()) {
    o.d_fwd = ens.d_s2y.predict(concat_pairs(s, o.fwd));
    o.d_bwd = ens.d_y2s.predict(concat_pairs(y, o.bwd));
  }
  LossWeights eff = w;
  if (!ens.bidirectional()) eff.alpha = eff.gamma = eff.delta = 0.0;
  return g_loss_value(o, s, y, eff);
}

double accumulate_discriminator_gradients(nn::NeuralNet& disc, const nn::NeuralNet& gen, const RealMatrix& x,
                                          const RealMatrix& target, bool inverted, Rng& rng) {
  const Eigen::Index m = x.rows();
  const RealMatrix fake = gen.forward_traced(x, rng).output;
  RealMatrix pairs(2 * m, x.cols() + target.cols());
  pairs.topRows(m) << x, target;
  pairs.bottomRows(m) << x, fake;
  const auto trace = disc.forward_traced(pairs, rng);
  const double t_real = inverted ? -1.0 : 1.0;
  RealMatrix diff = trace.output;
  diff.topRows(m).array() -= t_real;
  diff.bottomRows(m).array() += t_real;
  const double loss = diff.squaredNorm() / static_cast<double>(m);
  disc.backward(trace, (2.0 / static_cast<double>(m)) * diff, nn::GradTarget::params_and_input);
  return loss;
}

double accumulate_generator_gradients(DetectorEnsemble& ens, const RealMatrix& s, const RealMatrix& y,
                                      const LossWeights& w, Rng& rng) {
  const double m = static_cast<double>(s.rows());
  const Eigen::Index f = s.cols();

  const auto tb = ens.g_y2s.forward_traced(y, rng);
  double loss = w.beta * l1_sum(tb.output, s);
  RealMatrix grad_b = l1_grad(tb.output, s, w.beta / m);

  if (!ens.bidirectional()) {
    ens.g_y2s.backward(tb, grad_b);
    return loss / m;
  }

  const auto ta = ens.g_s2y.forward_traced(s, rng);
  const auto tc = ens.g_y2s.forward_traced(ta.output, rng);
  const auto td = ens.g_s2y.forward_traced(tb.output, rng);
  loss += w.alpha * l1_sum(ta.output, y) + w.gamma * l1_sum(tc.output, s) + w.delta * l1_sum(td.output, y);
  RealMatrix grad_a = l1_grad(ta.output, y, w.alpha / m);

  if (ens.adversarial()) {
    const auto te = ens.d_s2y.forward_traced(concat_pairs(s, ta.output), rng);
    const auto tf = ens.d_y2s.forward_traced(concat_pairs(y, tb.output), rng);
    loss += te.output.squaredNorm() + tf.output.squaredNorm();
    const RealMatrix ge = ens.d_s2y.backward(te, (2.0 / m) * te.output, nn::GradTarget::input_only);
    const RealMatrix gf = ens.d_y2s.backward(tf, (2.0 / m) * tf.output, nn::GradTarget::input_only);
    grad_a += ge.rightCols(f);
    grad_b += gf.rightCols(f);
  }

  // Cycle terms: backprop through the second network first, then route
  // the input gradient into the first network's output.
  grad_a += ens.g_y2s.backward(tc, l1_grad(tc.output, s, w.gamma / m));
  grad_b += ens.g_s2y.backward(td, l1_grad(td.output, y, w.delta / m));
  ens.g_s2y.backward(ta, grad_a);
  ens.g_y2s.backward(tb, grad_b);
  return loss / m;
}

}  // namespace mimogan::detectors
