#include "egan/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "egan/errors.hpp"

namespace egan {

namespace {

constexpr const char* kFormatTag = "egan-checkpoint 1";

std::string hexfloat(scalar_t v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

scalar_t parse_double(const std::string& tok) {
  char* end = nullptr;
  const scalar_t v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw DataError("checkpoint: bad numeric token '" + tok + "'");
  return v;
}

std::string activation_name(Activation a) {
  return a == Activation::LeakyRelu ? "leaky_relu" : "tanh";
}

Activation activation_from(const std::string& s) {
  if (s == "leaky_relu") return Activation::LeakyRelu;
  if (s == "tanh") return Activation::Tanh;
  throw DataError("checkpoint: unknown activation '" + s + "'");
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  validate(ckpt.spec);
  out << kFormatTag << "\n";
  out << "kind " << ckpt.kind << "\n";
  out << "input_dim " << ckpt.spec.input_dim << "\n";
  out << "output_dim " << ckpt.spec.output_dim << "\n";
  out << "output_activation "
      << (ckpt.spec.output_activation == OutputActivation::Sigmoid ? "sigmoid"
                                                                   : "identity")
      << "\n";
  out << "hidden";
  for (const HiddenLayer& h : ckpt.spec.hidden)
    out << " " << h.width << ":" << activation_name(h.activation);
  out << "\n";
  for (int l = 0; l < ckpt.params.num_layers(); ++l) {
    const matrix_t& w = ckpt.params.weight(l);
    const matrix_t& b = ckpt.params.bias(l);
    out << "layer " << l << " " << w.rows() << " " << w.cols() << "\n";
    for (index_t i = 0; i < w.rows(); ++i) {
      for (index_t j = 0; j < w.cols(); ++j)
        out << (j ? " " : "") << hexfloat(w(i, j));
      out << "\n";
    }
    for (index_t j = 0; j < b.cols(); ++j) out << (j ? " " : "") << hexfloat(b(0, j));
    out << "\n";
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw DataError("checkpoint: cannot open " + path.string() + " for writing");
  save_checkpoint(out, ckpt);
  if (!out) throw DataError("checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kFormatTag)
    throw DataError("checkpoint: missing or unsupported format tag");

  Checkpoint ckpt;
  auto expect_key = [&](const char* key) -> std::istringstream {
    if (!std::getline(in, line)) throw DataError("checkpoint: truncated header");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) throw DataError(std::string("checkpoint: expected '") + key + "'");
    return ls;
  };

  expect_key("kind") >> ckpt.kind;
  expect_key("input_dim") >> ckpt.spec.input_dim;
  expect_key("output_dim") >> ckpt.spec.output_dim;
  std::string out_act;
  expect_key("output_activation") >> out_act;
  if (out_act == "sigmoid")
    ckpt.spec.output_activation = OutputActivation::Sigmoid;
  else if (out_act == "identity")
    ckpt.spec.output_activation = OutputActivation::Identity;
  else
    throw DataError("checkpoint: unknown output activation '" + out_act + "'");

  {
    auto ls = expect_key("hidden");
    std::string tok;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw DataError("checkpoint: bad hidden layer '" + tok + "'");
      HiddenLayer h;
      h.width = std::stoi(tok.substr(0, colon));
      h.activation = activation_from(tok.substr(colon + 1));
      ckpt.spec.hidden.push_back(h);
    }
  }
  validate(ckpt.spec);

  auto read_row = [&](index_t cols) {
    if (!std::getline(in, line)) throw DataError("checkpoint: truncated values");
    std::istringstream ls(line);
    vector_t row(cols);
    std::string tok;
    for (index_t j = 0; j < cols; ++j) {
      if (!(ls >> tok)) throw DataError("checkpoint: short value row");
      row(j) = parse_double(tok);
    }
    if (ls >> tok) throw DataError("checkpoint: extra values in row");
    return row;
  };

  for (int l = 0; l < ckpt.spec.num_layers(); ++l) {
    int layer_idx = -1;
    index_t rows = 0, cols = 0;
    expect_key("layer") >> layer_idx >> rows >> cols;
    if (layer_idx != l) throw DataError("checkpoint: layers out of order");
    matrix_t w(rows, cols);
    for (index_t i = 0; i < rows; ++i) w.row(i) = read_row(cols).transpose();
    matrix_t b(1, cols);
    b.row(0) = read_row(cols).transpose();
    ckpt.params.tensors.push_back(std::move(w));
    ckpt.params.tensors.push_back(std::move(b));
  }

  // Reuse the forward-path validation to confirm shapes chain with the spec.
  if (ckpt.params.num_layers() != ckpt.spec.num_layers())
    throw DataError("checkpoint: layer count mismatch");
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("checkpoint: cannot open " + path.string());
  return load_checkpoint(in);
}

}  // namespace egan
