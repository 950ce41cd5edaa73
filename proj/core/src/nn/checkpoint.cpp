#include "mimogan/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "mimogan/common/errors.hpp"

namespace mimogan::nn {

namespace wire {

namespace {
template <typename U>
void put_le(std::ostream& out, U v) {
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, sizeof(U));
}

template <typename U>
U get_le(std::istream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw FormatError("checkpoint truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}
}  // namespace

void put_u8(std::ostream& out, std::uint8_t v) { put_le(out, v); }
void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v); }
void put_u64(std::ostream& out, std::uint64_t v) { put_le(out, v); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
std::uint8_t get_u8(std::istream& in) { return get_le<std::uint8_t>(in); }
std::uint32_t get_u32(std::istream& in) { return get_le<std::uint32_t>(in); }
std::uint64_t get_u64(std::istream& in) { return get_le<std::uint64_t>(in); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace wire

void save_checkpoint(const NeuralNet& net, std::ostream& out) {
  out.write(kCheckpointMagic, 4);
  wire::put_u32(out, kCheckpointVersion);
  wire::put_u32(out, static_cast<std::uint32_t>(net.layers().size()));
  wire::put_u64(out, static_cast<std::uint64_t>(net.input_width()));
  std::size_t dense = 0;
  for (const auto& spec : net.layers()) {
    wire::put_u8(out, static_cast<std::uint8_t>(spec.kind));
    switch (spec.kind) {
      case LayerKind::dense: {
        const auto& p = net.params()[dense++];
        wire::put_u64(out, static_cast<std::uint64_t>(p.weight.rows()));
        wire::put_u64(out, static_cast<std::uint64_t>(p.weight.cols()));
        wire::put_f64(out, 0.0);
        for (Eigen::Index r = 0; r < p.weight.rows(); ++r)
          for (Eigen::Index c = 0; c < p.weight.cols(); ++c) wire::put_f64(out, p.weight(r, c));
        for (Eigen::Index c = 0; c < p.bias.size(); ++c) wire::put_f64(out, p.bias(c));
        break;
      }
      case LayerKind::leaky_relu:
        wire::put_u64(out, 0);
        wire::put_u64(out, 0);
        wire::put_f64(out, spec.slope);
        break;
      case LayerKind::dropout:
        wire::put_u64(out, 0);
        wire::put_u64(out, 0);
        wire::put_f64(out, spec.drop_rate);
        break;
      case LayerKind::tanh:
        wire::put_u64(out, 0);
        wire::put_u64(out, 0);
        wire::put_f64(out, 0.0);
        break;
    }
  }
  if (!out) throw FormatError("checkpoint write failed");
}

NeuralNet load_checkpoint(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw FormatError("not a network checkpoint (bad magic)");
  const auto version = wire::get_u32(in);
  if (version != kCheckpointVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));
  const auto count = wire::get_u32(in);
  const auto input_width = static_cast<Eigen::Index>(wire::get_u64(in));

  std::vector<LayerSpec> specs;
  std::vector<std::pair<RealMatrix, RealVector>> dense;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto kind = static_cast<LayerKind>(wire::get_u8(in));
    const auto rows = static_cast<Eigen::Index>(wire::get_u64(in));
    const auto cols = static_cast<Eigen::Index>(wire::get_u64(in));
    const double scalar = wire::get_f64(in);
    switch (kind) {
      case LayerKind::dense: {
        if (rows <= 0 || cols <= 0 || rows > (1 << 20) || cols > (1 << 20))
          throw FormatError("implausible dense layer dimensions");
        RealMatrix w(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
          for (Eigen::Index c = 0; c < cols; ++c) w(r, c) = wire::get_f64(in);
        RealVector b(cols);
        for (Eigen::Index c = 0; c < cols; ++c) b(c) = wire::get_f64(in);
        specs.push_back(LayerSpec::dense(cols));
        dense.emplace_back(std::move(w), std::move(b));
        break;
      }
      case LayerKind::leaky_relu: specs.push_back(LayerSpec::leaky_relu(scalar)); break;
      case LayerKind::dropout: specs.push_back(LayerSpec::dropout(scalar)); break;
      case LayerKind::tanh: specs.push_back(LayerSpec::tanh()); break;
      default: throw FormatError("unknown layer kind tag " + std::to_string(static_cast<int>(kind)));
    }
  }

  NeuralNet net = NeuralNet::zeros(input_width, std::move(specs));
  for (std::size_t i = 0; i < dense.size(); ++i) {
    auto& p = net.params()[i];
    if (p.weight.rows() != dense[i].first.rows())
      throw FormatError("dense layer " + std::to_string(i) + " fan-in does not chain");
    p.weight = std::move(dense[i].first);
    p.bias = std::move(dense[i].second);
  }
  return net;
}

void save_checkpoint(const NeuralNet& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  save_checkpoint(net, out);
}

NeuralNet load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return load_checkpoint(in);
}

}  // namespace mimogan::nn
