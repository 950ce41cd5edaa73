#pragma once

#include <iosfwd>
#include <string>

#include "mimogan/nn/network.hpp"

namespace mimogan::nn {

// Flat binary network checkpoint, all integers and floats little-endian:
//
//   magic       4 bytes  "MGNN"
//   version     u32      1
//   layer_count u32
//   input_width u64
//   per layer:
//     kind      u8       LayerKind value
//     rows      u64      dense: fan-in, otherwise 0
//     cols      u64      dense: fan-out, otherwise 0
//     scalar    f64      leaky_relu slope, dropout rate, otherwise 0
//     dense only: rows*cols f64 weights (row-major), then cols f64 biases
//
// Gradients are not stored. save(load(bytes)) reproduces bytes exactly.
inline constexpr char kCheckpointMagic[4] = {'M', 'G', 'N', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const NeuralNet& net, std::ostream& out);
NeuralNet load_checkpoint(std::istream& in);

void save_checkpoint(const NeuralNet& net, const std::string& path);
NeuralNet load_checkpoint(const std::string& path);

// Little-endian primitives shared with the ensemble checkpoint writer.
namespace wire {
void put_u8(std::ostream& out, std::uint8_t v);
void put_u32(std::ostream& out, std::uint32_t v);
void put_u64(std::ostream& out, std::uint64_t v);
void put_f64(std::ostream& out, double v);
std::uint8_t get_u8(std::istream& in);
std::uint32_t get_u32(std::istream& in);
std::uint64_t get_u64(std::istream& in);
double get_f64(std::istream& in);
}  // namespace wire

}  // namespace mimogan::nn
