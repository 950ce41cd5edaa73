#include "mimogan/detectors/ensemble.hpp"

#include <cstring>
#include <istream>
#include <ostream>

#include "mimogan/common/errors.hpp"
#include "mimogan/nn/checkpoint.hpp"

namespace mimogan::detectors {

std::string_view to_string(DetectorKind kind) noexcept {
  switch (kind) {
    case DetectorKind::cyclegan: return "cyclegan";
    case DetectorKind::cyclednn: return "cyclednn";
    case DetectorKind::dnn: return "dnn";
  }
  return "unknown";
}

std::vector<nn::LayerSpec> generator_layers(const NetworkShape& shape) {
  using nn::LayerSpec;
  return {LayerSpec::dense(shape.gen_hidden1), LayerSpec::leaky_relu(shape.slope), LayerSpec::dropout(shape.drop_rate),
          LayerSpec::dense(shape.gen_hidden2), LayerSpec::leaky_relu(shape.slope), LayerSpec::dropout(shape.drop_rate),
          LayerSpec::dense(shape.features),    LayerSpec::tanh()};
}

std::vector<nn::LayerSpec> discriminator_layers(const NetworkShape& shape) {
  using nn::LayerSpec;
  return {LayerSpec::dense(shape.disc_hidden1), LayerSpec::leaky_relu(shape.slope), LayerSpec::dropout(shape.drop_rate),
          LayerSpec::dense(shape.disc_hidden2), LayerSpec::leaky_relu(shape.slope), LayerSpec::dropout(shape.drop_rate),
          LayerSpec::dense(1)};
}

namespace {
void check_weights(const LossWeights& w) {
  if (w.alpha < 0 || w.beta < 0 || w.gamma < 0 || w.delta < 0) throw DomainError("loss weights must be >= 0");
}
}  // namespace

DetectorEnsemble DetectorEnsemble::create(DetectorKind kind, const NetworkShape& shape, const nn::AdamConfig& adam,
                                          const LossWeights& pilot, const LossWeights& data, Rng& init_rng) {
  check_weights(pilot);
  check_weights(data);
  DetectorEnsemble e;
  e.kind = kind;
  e.shape = shape;
  e.g_s2y = nn::NeuralNet(shape.features, generator_layers(shape), init_rng);
  e.g_y2s = nn::NeuralNet(shape.features, generator_layers(shape), init_rng);
  e.d_s2y = nn::NeuralNet(2 * shape.features, discriminator_layers(shape), init_rng);
  e.d_y2s = nn::NeuralNet(2 * shape.features, discriminator_layers(shape), init_rng);
  e.opt_g_s2y = nn::AdamState::for_net(e.g_s2y, adam);
  e.opt_g_y2s = nn::AdamState::for_net(e.g_y2s, adam);
  e.opt_d_s2y = nn::AdamState::for_net(e.d_s2y, adam);
  e.opt_d_y2s = nn::AdamState::for_net(e.d_y2s, adam);
  e.pilot_weights = pilot;
  e.data_weights = data;
  return e;
}

namespace {
constexpr char kEnsembleMagic[4] = {'M', 'G', 'E', 'N'};
constexpr std::uint32_t kEnsembleVersion = 1;
}  // namespace

void save_ensemble(const DetectorEnsemble& ens, std::ostream& out) {
  using namespace nn::wire;
  out.write(kEnsembleMagic, 4);
  put_u32(out, kEnsembleVersion);
  put_u8(out, static_cast<std::uint8_t>(ens.kind));
  for (const auto* w : {&ens.pilot_weights, &ens.data_weights}) {
    put_f64(out, w->alpha);
    put_f64(out, w->beta);
    put_f64(out, w->gamma);
    put_f64(out, w->delta);
  }
  put_u64(out, static_cast<std::uint64_t>(ens.scales.s_max.size()));
  for (Eigen::Index k = 0; k < ens.scales.s_max.size(); ++k) put_f64(out, ens.scales.s_max(k));
  put_u64(out, static_cast<std::uint64_t>(ens.scales.y_max.size()));
  for (Eigen::Index k = 0; k < ens.scales.y_max.size(); ++k) put_f64(out, ens.scales.y_max(k));
  for (const auto* net : {&ens.g_s2y, &ens.g_y2s, &ens.d_s2y, &ens.d_y2s}) nn::save_checkpoint(*net, out);
}

DetectorEnsemble load_ensemble(std::istream& in, const nn::AdamConfig& adam) {
  using namespace nn::wire;
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kEnsembleMagic, 4) != 0)
    throw FormatError("not an ensemble checkpoint (bad magic)");
  if (get_u32(in) != kEnsembleVersion) throw FormatError("unsupported ensemble checkpoint version");
  DetectorEnsemble e;
  const auto kind = get_u8(in);
  if (kind > static_cast<std::uint8_t>(DetectorKind::dnn)) throw FormatError("unknown detector kind");
  e.kind = static_cast<DetectorKind>(kind);
  for (auto* w : {&e.pilot_weights, &e.data_weights}) {
    w->alpha = get_f64(in);
    w->beta = get_f64(in);
    w->gamma = get_f64(in);
    w->delta = get_f64(in);
  }
  const auto read_vec = [&in]() {
    const auto n = get_u64(in);
    if (n > (1u << 20)) throw FormatError("implausible scale vector length");
    RealVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = get_f64(in);
    return v;
  };
  e.scales.s_max = read_vec();
  e.scales.y_max = read_vec();
  e.g_s2y = nn::load_checkpoint(in);
  e.g_y2s = nn::load_checkpoint(in);
  e.d_s2y = nn::load_checkpoint(in);
  e.d_y2s = nn::load_checkpoint(in);

  // Recover the shape from the loaded chains.
  const auto& gp = e.g_s2y.params();
  const auto& dp = e.d_s2y.params();
  if (gp.size() != 3 || dp.size() != 3) throw FormatError("ensemble networks do not have three dense layers");
  e.shape.features = e.g_s2y.input_width();
  e.shape.gen_hidden1 = gp[0].weight.cols();
  e.shape.gen_hidden2 = gp[1].weight.cols();
  e.shape.disc_hidden1 = dp[0].weight.cols();
  e.shape.disc_hidden2 = dp[1].weight.cols();
  for (const auto& spec : e.g_s2y.layers()) {
    if (spec.kind == nn::LayerKind::leaky_relu) e.shape.slope = spec.slope;
    if (spec.kind == nn::LayerKind::dropout) e.shape.drop_rate = spec.drop_rate;
  }
  e.opt_g_s2y = nn::AdamState::for_net(e.g_s2y, adam);
  e.opt_g_y2s = nn::AdamState::for_net(e.g_y2s, adam);
  e.opt_d_s2y = nn::AdamState::for_net(e.d_s2y, adam);
  e.opt_d_y2s = nn::AdamState::for_net(e.d_y2s, adam);
  return e;
}

}  // namespace mimogan::detectors
