#pragma once

#include <span>
#include <string>
#include <vector>

#include "egan/autodiff.hpp"
#include "egan/rng.hpp"
#include "egan/types.hpp"

namespace egan {

enum class Activation { LeakyRelu, Tanh };
enum class OutputActivation { Identity, Sigmoid };

struct HiddenLayer {
  int width;
  Activation activation;
};

struct MlpSpec {
  int input_dim = 0;
  std::vector<HiddenLayer> hidden;
  int output_dim = 0;
  OutputActivation output_activation = OutputActivation::Identity;

  /** Number of (weight, bias) layers, hidden plus output. */
  int num_layers() const { return static_cast<int>(hidden.size()) + 1; }
};

/** All widths positive; discriminators end in a sigmoid over one unit. */
void validate(const MlpSpec& spec);

/** Toy generator: z_dim -> depth x width leaky-rectifier -> linear data_dim. */
MlpSpec generator_spec(int z_dim, int width, int depth, int data_dim);

/** Toy discriminator: data_dim -> depth x width leaky-rectifier -> sigmoid 1. */
MlpSpec discriminator_spec(int data_dim, int width, int depth);

/**
 * Layer parameters, ordered [W0, b0, W1, b1, ...]; weights are (in, out),
 * biases are 1 x out. Immutable by convention once produced: training code
 * copies, never edits in place.
 */
struct ParamVector {
  std::vector<matrix_t> tensors;

  int num_layers() const { return static_cast<int>(tensors.size()) / 2; }
  matrix_t& weight(int layer) { return tensors[2 * static_cast<std::size_t>(layer)]; }
  matrix_t& bias(int layer) { return tensors[2 * static_cast<std::size_t>(layer) + 1]; }
  const matrix_t& weight(int layer) const {
    return tensors[2 * static_cast<std::size_t>(layer)];
  }
  const matrix_t& bias(int layer) const {
    return tensors[2 * static_cast<std::size_t>(layer) + 1];
  }
};

/** Weights ~ N(0, 2/fan_in), biases zero; deterministic given the stream. */
ParamVector init_mlp(const MlpSpec& spec, RandomStream& rng);

/** Plain forward pass (no tape). */
matrix_t mlp_forward(const MlpSpec& spec, const ParamVector& params, const matrix_t& input);

/** Generator forward: batch of z rows to batch of data rows. */
matrix_t gen_forward(const MlpSpec& spec, const ParamVector& theta, const matrix_t& z);

/** Discriminator forward: probabilities clamped into (0, 1). */
matrix_t disc_forward(const MlpSpec& spec, const ParamVector& w, const matrix_t& x);

/** Record params as differentiable leaves; returns one node per tensor. */
std::vector<NodeId> tape_parameters(Tape& tape, const ParamVector& params);

/** Record params as constant (frozen) leaves. */
std::vector<NodeId> tape_constants(Tape& tape, const ParamVector& params);

/**
 * Forward pass recorded on a tape; param_nodes follow ParamVector order.
 * Applies the same op sequence as the plain forward, so values agree bitwise.
 */
NodeId tape_forward(Tape& tape, const MlpSpec& spec, std::span<const NodeId> param_nodes,
                    NodeId input);

}  // namespace egan
