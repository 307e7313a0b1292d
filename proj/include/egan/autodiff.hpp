#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "egan/ops.hpp"
#include "egan/types.hpp"

namespace egan {

using NodeId = int;

/** Gradient of a scalar output with respect to designated parameter leaves. */
using GradientMap = std::map<NodeId, matrix_t>;

/**
 * Define-by-run reverse-mode tape over dense matrices.
 *
 * Values are computed eagerly as nodes are recorded, so the node list is a
 * topological order by construction. A tape is built per batch, is single-use,
 * and is confined to one thread of control; distinct tapes over read-only
 * parameter snapshots may be evaluated concurrently.
 *
 * Every intermediate is checked finite; a NaN/Inf raises NumericError naming
 * the node. Shape mismatches raise StructuralError naming the node.
 */
class Tape {
 public:
  /** Non-differentiable input leaf. */
  NodeId constant(matrix_t value);

  /** Differentiable parameter leaf. */
  NodeId parameter(matrix_t value);

  NodeId affine(NodeId x, NodeId w, NodeId b);
  NodeId leaky_relu(NodeId x, scalar_t slope = ops::kLeakySlope);
  NodeId tanh(NodeId x);
  NodeId sigmoid(NodeId x);
  NodeId log(NodeId x);
  NodeId clamp(NodeId x, scalar_t lo, scalar_t hi);
  NodeId square(NodeId x);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  /** c - x elementwise. */
  NodeId sub_from(scalar_t c, NodeId x);
  /** c * x elementwise. */
  NodeId scale(NodeId x, scalar_t c);
  /** Mean over all entries; result is 1x1. */
  NodeId mean(NodeId x);

  const matrix_t& value(NodeId id) const;

  /** Value of a 1x1 node. */
  scalar_t scalar_value(NodeId id) const;

  /**
   * Reverse pass from a scalar output. Returns a gradient entry for every
   * leaf in wrt (zeros when the output does not depend on it); leaves outside
   * wrt receive no entry. Each node is visited exactly once, in reverse
   * recording order.
   */
  GradientMap backward(NodeId output, std::span<const NodeId> wrt) const;

  index_t size() const { return static_cast<index_t>(nodes_.size()); }

 private:
  enum class Op {
    Constant,
    Parameter,
    Affine,
    LeakyRelu,
    Tanh,
    Sigmoid,
    Log,
    Clamp,
    Square,
    Add,
    Sub,
    SubFrom,
    Scale,
    Mean,
  };

  struct Node {
    Op op;
    matrix_t value;
    std::array<NodeId, 3> in{-1, -1, -1};
    scalar_t c0 = 0;  // op constant: slope, clamp lo, scale factor, c of c-x
    scalar_t c1 = 0;  // clamp hi
  };

  NodeId push(Node node);
  const Node& at(NodeId id) const;
  static std::string op_name(Op op);

  std::vector<Node> nodes_;
};

/** Euclidean norm of the concatenation of all gradient entries. */
scalar_t gradient_norm(const GradientMap& grads);

}  // namespace egan
