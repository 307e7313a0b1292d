#include "egan/autodiff.hpp"

#include <cmath>
#include <utility>

#include "egan/errors.hpp"

namespace egan {

namespace {

std::string shape_of(const matrix_t& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

std::string Tape::op_name(Op op) {
  switch (op) {
    case Op::Constant: return "constant";
    case Op::Parameter: return "parameter";
    case Op::Affine: return "affine";
    case Op::LeakyRelu: return "leaky_relu";
    case Op::Tanh: return "tanh";
    case Op::Sigmoid: return "sigmoid";
    case Op::Log: return "log";
    case Op::Clamp: return "clamp";
    case Op::Square: return "square";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::SubFrom: return "sub_from";
    case Op::Scale: return "scale";
    case Op::Mean: return "mean";
  }
  return "?";
}

NodeId Tape::push(Node node) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  if (!node.value.allFinite())
    throw NumericError("non-finite values in " + op_name(node.op) + " node " +
                       std::to_string(id));
  nodes_.push_back(std::move(node));
  return id;
}

const Tape::Node& Tape::at(NodeId id) const {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw UsageError("invalid node id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id)];
}

NodeId Tape::constant(matrix_t value) {
  return push({Op::Constant, std::move(value), {-1, -1, -1}, 0, 0});
}

NodeId Tape::parameter(matrix_t value) {
  return push({Op::Parameter, std::move(value), {-1, -1, -1}, 0, 0});
}

NodeId Tape::affine(NodeId x, NodeId w, NodeId b) {
  const matrix_t& xv = at(x).value;
  const matrix_t& wv = at(w).value;
  const matrix_t& bv = at(b).value;
  if (xv.cols() != wv.rows())
    throw StructuralError("affine node " + std::to_string(nodes_.size()) +
                          ": input " + shape_of(xv) + " incompatible with weight " +
                          shape_of(wv));
  if (bv.rows() != 1 || bv.cols() != wv.cols())
    throw StructuralError("affine node " + std::to_string(nodes_.size()) +
                          ": bias " + shape_of(bv) + " must be 1x" +
                          std::to_string(wv.cols()));
  return push({Op::Affine, ops::affine(xv, wv, bv), {x, w, b}, 0, 0});
}

NodeId Tape::leaky_relu(NodeId x, scalar_t slope) {
  return push({Op::LeakyRelu, ops::leaky_relu(at(x).value, slope), {x, -1, -1}, slope, 0});
}

NodeId Tape::tanh(NodeId x) {
  return push({Op::Tanh, ops::tanh(at(x).value), {x, -1, -1}, 0, 0});
}

NodeId Tape::sigmoid(NodeId x) {
  return push({Op::Sigmoid, ops::sigmoid(at(x).value), {x, -1, -1}, 0, 0});
}

NodeId Tape::log(NodeId x) {
  return push({Op::Log, ops::log(at(x).value), {x, -1, -1}, 0, 0});
}

NodeId Tape::clamp(NodeId x, scalar_t lo, scalar_t hi) {
  return push({Op::Clamp, ops::clamp(at(x).value, lo, hi), {x, -1, -1}, lo, hi});
}

NodeId Tape::square(NodeId x) {
  return push({Op::Square, ops::square(at(x).value), {x, -1, -1}, 0, 0});
}

NodeId Tape::add(NodeId a, NodeId b) {
  const matrix_t& av = at(a).value;
  const matrix_t& bv = at(b).value;
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    throw StructuralError("add node " + std::to_string(nodes_.size()) + ": " +
                          shape_of(av) + " vs " + shape_of(bv));
  return push({Op::Add, av + bv, {a, b, -1}, 0, 0});
}

NodeId Tape::sub(NodeId a, NodeId b) {
  const matrix_t& av = at(a).value;
  const matrix_t& bv = at(b).value;
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    throw StructuralError("sub node " + std::to_string(nodes_.size()) + ": " +
                          shape_of(av) + " vs " + shape_of(bv));
  return push({Op::Sub, av - bv, {a, b, -1}, 0, 0});
}

NodeId Tape::sub_from(scalar_t c, NodeId x) {
  return push({Op::SubFrom, (c - at(x).value.array()).matrix(), {x, -1, -1}, c, 0});
}

NodeId Tape::scale(NodeId x, scalar_t c) {
  return push({Op::Scale, c * at(x).value, {x, -1, -1}, c, 0});
}

NodeId Tape::mean(NodeId x) {
  return push({Op::Mean, ops::mean(at(x).value), {x, -1, -1}, 0, 0});
}

const matrix_t& Tape::value(NodeId id) const { return at(id).value; }

scalar_t Tape::scalar_value(NodeId id) const {
  const matrix_t& v = at(id).value;
  if (v.rows() != 1 || v.cols() != 1)
    throw StructuralError("node " + std::to_string(id) + " is not scalar (" +
                          shape_of(v) + ")");
  return v(0, 0);
}

GradientMap Tape::backward(NodeId output, std::span<const NodeId> wrt) const {
  const Node& out = at(output);
  if (out.value.rows() != 1 || out.value.cols() != 1)
    throw StructuralError("backward output node " + std::to_string(output) +
                          " is not scalar (" + shape_of(out.value) + ")");

  std::vector<char> needed(nodes_.size(), 0);
  for (NodeId id : wrt) {
    if (at(id).op != Op::Parameter)
      throw UsageError("backward: node " + std::to_string(id) +
                       " is not a parameter leaf");
    needed[static_cast<std::size_t>(id)] = 1;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (NodeId in : nodes_[i].in)
      if (in >= 0 && needed[static_cast<std::size_t>(in)]) needed[i] = 1;
  }

  std::vector<matrix_t> grads(nodes_.size());
  auto grad_of = [&](NodeId id) -> matrix_t& {
    auto& g = grads[static_cast<std::size_t>(id)];
    if (g.size() == 0) g = matrix_t::Zero(at(id).value.rows(), at(id).value.cols());
    return g;
  };

  if (needed[static_cast<std::size_t>(output)]) grad_of(output)(0, 0) = 1.0;

  for (NodeId id = output; id >= 0; --id) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!needed[static_cast<std::size_t>(id)]) continue;
    const matrix_t& g = grads[static_cast<std::size_t>(id)];
    if (g.size() == 0) continue;  // not reached from the output
    auto want = [&](int slot) {
      return n.in[slot] >= 0 && needed[static_cast<std::size_t>(n.in[slot])];
    };
    switch (n.op) {
      case Op::Constant:
      case Op::Parameter:
        break;
      case Op::Affine: {
        const matrix_t& x = at(n.in[0]).value;
        const matrix_t& w = at(n.in[1]).value;
        if (want(0)) grad_of(n.in[0]).noalias() += g * w.transpose();
        if (want(1)) grad_of(n.in[1]).noalias() += x.transpose() * g;
        if (want(2)) grad_of(n.in[2]).noalias() += g.colwise().sum();
        break;
      }
      case Op::LeakyRelu: {
        if (!want(0)) break;
        const scalar_t slope = n.c0;
        const matrix_t& x = at(n.in[0]).value;
        grad_of(n.in[0]).array() +=
            g.array() * x.unaryExpr([slope](scalar_t v) {
                           return v > 0 ? scalar_t{1} : slope;
                         }).array();
        break;
      }
      case Op::Tanh:
        if (want(0))
          grad_of(n.in[0]).array() += g.array() * (1.0 - n.value.array().square());
        break;
      case Op::Sigmoid:
        if (want(0))
          grad_of(n.in[0]).array() +=
              g.array() * (n.value.array() * (1.0 - n.value.array()));
        break;
      case Op::Log:
        if (want(0)) grad_of(n.in[0]).array() += g.array() / at(n.in[0]).value.array();
        break;
      case Op::Clamp: {
        if (!want(0)) break;
        const scalar_t lo = n.c0, hi = n.c1;
        const matrix_t& x = at(n.in[0]).value;
        grad_of(n.in[0]).array() +=
            g.array() * x.unaryExpr([lo, hi](scalar_t v) {
                           return (v >= lo && v <= hi) ? scalar_t{1} : scalar_t{0};
                         }).array();
        break;
      }
      case Op::Square:
        if (want(0))
          grad_of(n.in[0]).array() += g.array() * 2.0 * at(n.in[0]).value.array();
        break;
      case Op::Add:
        if (want(0)) grad_of(n.in[0]) += g;
        if (want(1)) grad_of(n.in[1]) += g;
        break;
      case Op::Sub:
        if (want(0)) grad_of(n.in[0]) += g;
        if (want(1)) grad_of(n.in[1]) -= g;
        break;
      case Op::SubFrom:
        if (want(0)) grad_of(n.in[0]) -= g;
        break;
      case Op::Scale:
        if (want(0)) grad_of(n.in[0]) += n.c0 * g;
        break;
      case Op::Mean: {
        if (!want(0)) break;
        const matrix_t& x = at(n.in[0]).value;
        grad_of(n.in[0]).array() += g(0, 0) / static_cast<scalar_t>(x.size());
        break;
      }
    }
  }

  GradientMap result;
  for (NodeId id : wrt) {
    matrix_t& g = grads[static_cast<std::size_t>(id)];
    if (g.size() == 0)
      result.emplace(id, matrix_t::Zero(at(id).value.rows(), at(id).value.cols()));
    else
      result.emplace(id, std::move(g));
  }
  return result;
}

scalar_t gradient_norm(const GradientMap& grads) {
  if (grads.empty()) throw UsageError("gradient_norm: empty gradient map");
  scalar_t sum = 0;
  for (const auto& [id, g] : grads) sum += g.squaredNorm();
  return std::sqrt(sum);
}

}  // namespace egan
