#include "egan/mlp.hpp"

#include <cmath>

#include "egan/errors.hpp"
#include "egan/ops.hpp"

namespace egan {

void validate(const MlpSpec& spec) {
  if (spec.input_dim <= 0)
    throw StructuralError("MlpSpec: input_dim must be positive");
  if (spec.output_dim <= 0)
    throw StructuralError("MlpSpec: output_dim must be positive");
  for (const HiddenLayer& h : spec.hidden)
    if (h.width <= 0) throw StructuralError("MlpSpec: hidden widths must be positive");
  if (spec.output_activation == OutputActivation::Sigmoid && spec.output_dim != 1)
    throw StructuralError("MlpSpec: sigmoid output requires output_dim 1");
}

MlpSpec generator_spec(int z_dim, int width, int depth, int data_dim) {
  MlpSpec spec;
  spec.input_dim = z_dim;
  spec.hidden.assign(static_cast<std::size_t>(depth), {width, Activation::LeakyRelu});
  spec.output_dim = data_dim;
  spec.output_activation = OutputActivation::Identity;
  validate(spec);
  return spec;
}

MlpSpec discriminator_spec(int data_dim, int width, int depth) {
  MlpSpec spec;
  spec.input_dim = data_dim;
  spec.hidden.assign(static_cast<std::size_t>(depth), {width, Activation::LeakyRelu});
  spec.output_dim = 1;
  spec.output_activation = OutputActivation::Sigmoid;
  validate(spec);
  return spec;
}

ParamVector init_mlp(const MlpSpec& spec, RandomStream& rng) {
  validate(spec);
  ParamVector params;
  int fan_in = spec.input_dim;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int fan_out =
        l < static_cast<int>(spec.hidden.size()) ? spec.hidden[l].width : spec.output_dim;
    const scalar_t stddev = std::sqrt(2.0 / static_cast<scalar_t>(fan_in));
    params.tensors.push_back(stddev * rng.gaussian_matrix(fan_in, fan_out));
    params.tensors.push_back(matrix_t::Zero(1, fan_out));
    fan_in = fan_out;
  }
  return params;
}

namespace {

void check_params(const MlpSpec& spec, const ParamVector& params) {
  if (params.num_layers() != spec.num_layers())
    throw StructuralError("mlp: parameter count does not match spec");
  index_t fan = spec.input_dim;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const index_t out = l < static_cast<int>(spec.hidden.size())
                            ? spec.hidden[static_cast<std::size_t>(l)].width
                            : spec.output_dim;
    if (params.weight(l).rows() != fan || params.weight(l).cols() != out ||
        params.bias(l).rows() != 1 || params.bias(l).cols() != out)
      throw StructuralError("mlp: layer " + std::to_string(l) +
                            " parameter shapes do not chain with spec");
    fan = out;
  }
}

}  // namespace

matrix_t mlp_forward(const MlpSpec& spec, const ParamVector& params, const matrix_t& input) {
  check_params(spec, params);
  if (input.cols() != spec.input_dim)
    throw StructuralError("mlp_forward: input has " + std::to_string(input.cols()) +
                          " columns, spec expects " + std::to_string(spec.input_dim));
  matrix_t h = input;
  for (std::size_t l = 0; l < spec.hidden.size(); ++l) {
    h = ops::affine(h, params.weight(static_cast<int>(l)), params.bias(static_cast<int>(l)));
    h = spec.hidden[l].activation == Activation::LeakyRelu ? ops::leaky_relu(h)
                                                           : ops::tanh(h);
  }
  const int out = spec.num_layers() - 1;
  h = ops::affine(h, params.weight(out), params.bias(out));
  if (spec.output_activation == OutputActivation::Sigmoid)
    h = ops::clamp(ops::sigmoid(h), ops::kProbEps, 1.0 - ops::kProbEps);
  return h;
}

matrix_t gen_forward(const MlpSpec& spec, const ParamVector& theta, const matrix_t& z) {
  return mlp_forward(spec, theta, z);
}

matrix_t disc_forward(const MlpSpec& spec, const ParamVector& w, const matrix_t& x) {
  return mlp_forward(spec, w, x);
}

std::vector<NodeId> tape_parameters(Tape& tape, const ParamVector& params) {
  std::vector<NodeId> nodes;
  nodes.reserve(params.tensors.size());
  for (const matrix_t& t : params.tensors) nodes.push_back(tape.parameter(t));
  return nodes;
}

std::vector<NodeId> tape_constants(Tape& tape, const ParamVector& params) {
  std::vector<NodeId> nodes;
  nodes.reserve(params.tensors.size());
  for (const matrix_t& t : params.tensors) nodes.push_back(tape.constant(t));
  return nodes;
}

NodeId tape_forward(Tape& tape, const MlpSpec& spec, std::span<const NodeId> param_nodes,
                    NodeId input) {
  if (static_cast<int>(param_nodes.size()) != 2 * spec.num_layers())
    throw StructuralError("tape_forward: parameter node count does not match spec");
  NodeId h = input;
  for (std::size_t l = 0; l < spec.hidden.size(); ++l) {
    h = tape.affine(h, param_nodes[2 * l], param_nodes[2 * l + 1]);
    h = spec.hidden[l].activation == Activation::LeakyRelu ? tape.leaky_relu(h)
                                                           : tape.tanh(h);
  }
  const std::size_t out = static_cast<std::size_t>(spec.num_layers()) - 1;
  h = tape.affine(h, param_nodes[2 * out], param_nodes[2 * out + 1]);
  if (spec.output_activation == OutputActivation::Sigmoid)
    h = tape.clamp(tape.sigmoid(h), ops::kProbEps, 1.0 - ops::kProbEps);
  return h;
}

}  // namespace egan
