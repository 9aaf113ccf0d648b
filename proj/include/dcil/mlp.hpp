// Copyright 2026 The DCIL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Feed-forward networks with a flat parameter vector and hand-written
// reverse mode.
//
// Batches are column-major matrices with one sample per column. Layer l
// stores its weights row-major (n_out x n_in) followed by n_out biases.
// Hidden layers use ReLU (subgradient 0 at 0); the output is affine.

#pragma once

#include <Eigen/Core>

#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/rng.hpp"

namespace dcil {

template <typename Scalar>
class Mlp {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  /// Inputs of every layer recorded by a forward pass, consumed by backward().
  struct Tape {
    std::vector<Matrix> inputs;
  };

  Mlp() = default;

  /// Zero-initialised network.
  explicit Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least two layer sizes");
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      if (sizes_[l] <= 0 || sizes_[l + 1] <= 0)
        throw std::invalid_argument("Mlp: layer sizes must be positive");
      offsets_.push_back(n);
      n += static_cast<std::size_t>(sizes_[l] + 1) * sizes_[l + 1];
    }
    params_ = Vector::Zero(static_cast<Eigen::Index>(n));
  }

  /// He-style uniform fan-in initialisation, zero biases. The output layer
  /// is further scaled by output_scale.
  static Mlp random(std::vector<int> sizes, Rng& rng, double output_scale = 1.0) {
    Mlp net(std::move(sizes));
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
      double bound = std::sqrt(6.0 / net.sizes_[l]);
      if (l + 1 == net.num_layers()) bound *= output_scale;
      std::uniform_real_distribution<double> u(-bound, bound);
      auto w = net.weights(l);
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = static_cast<Scalar>(u(rng));
    }
    return net;
  }

  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t num_layers() const { return offsets_.size(); }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  Eigen::Index num_params() const { return params_.size(); }

  Vector& params() { return params_; }
  const Vector& params() const { return params_; }

  Eigen::Map<RowMajor> weights(std::size_t l) {
    return {params_.data() + offsets_[l], sizes_[l + 1], sizes_[l]};
  }
  Eigen::Map<const RowMajor> weights(std::size_t l) const {
    return {params_.data() + offsets_[l], sizes_[l + 1], sizes_[l]};
  }
  Eigen::Map<Vector> biases(std::size_t l) {
    return {params_.data() + bias_offset(l), sizes_[l + 1]};
  }
  Eigen::Map<const Vector> biases(std::size_t l) const {
    return {params_.data() + bias_offset(l), sizes_[l + 1]};
  }

  Matrix forward(const Matrix& x) const {
    check_input(x);
    Matrix a = x;
    for (std::size_t l = 0; l < num_layers(); ++l) {
      Matrix z = weights(l) * a;
      z.colwise() += biases(l);
      if (l + 1 < num_layers()) z = z.cwiseMax(Scalar(0));
      a = std::move(z);
    }
    return a;
  }

  Matrix forward(const Matrix& x, Tape& tape) const {
    check_input(x);
    tape.inputs.resize(num_layers());
    tape.inputs[0] = x;
    Matrix z;
    for (std::size_t l = 0; l < num_layers(); ++l) {
      z.noalias() = weights(l) * tape.inputs[l];
      z.colwise() += biases(l);
      if (l + 1 < num_layers()) tape.inputs[l + 1] = z.cwiseMax(Scalar(0));
    }
    return z;
  }

  /// Reverse pass for output gradient dy (output_size x batch). Adds the
  /// parameter gradient, summed over the batch, into *grad when non-null and
  /// returns the input gradient.
  Matrix backward(const Tape& tape, const Matrix& dy, Vector* grad) const {
    if (tape.inputs.size() != num_layers() || dy.rows() != output_size() ||
        dy.cols() != tape.inputs[0].cols())
      throw std::invalid_argument("Mlp::backward: shape mismatch");
    if (grad && grad->size() != num_params())
      throw std::invalid_argument("Mlp::backward: gradient vector has wrong length");
    Matrix delta = dy;
    for (std::size_t l = num_layers(); l-- > 0;) {
      const Matrix& a = tape.inputs[l];
      if (grad) {
        Eigen::Map<RowMajor> gw(grad->data() + offsets_[l], sizes_[l + 1], sizes_[l]);
        gw.noalias() += delta * a.transpose();
        Eigen::Map<Vector> gb(grad->data() + bias_offset(l), sizes_[l + 1]);
        gb.noalias() += delta.rowwise().sum();
      }
      Matrix prev = weights(l).transpose() * delta;
      if (l > 0) prev = (a.array() > Scalar(0)).select(prev, Scalar(0));
      delta = std::move(prev);
    }
    return delta;
  }

  bool all_finite() const { return params_.allFinite(); }

 private:
  std::size_t bias_offset(std::size_t l) const {
    return offsets_[l] + static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1];
  }
  void check_input(const Matrix& x) const {
    if (x.rows() != input_size())
      throw std::invalid_argument("Mlp::forward: expected input of size " +
                                  std::to_string(input_size()) + ", got " +
                                  std::to_string(x.rows()));
  }

  std::vector<int> sizes_;
  std::vector<std::size_t> offsets_;
  Vector params_;
};

template <typename Scalar>
struct AdamState {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector m;
  Vector v;
  std::int64_t t = 0;
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  AdamState() = default;
  AdamState(Eigen::Index n, double learning_rate)
      : m(Vector::Zero(n)), v(Vector::Zero(n)), lr(learning_rate) {}
};

/// One bias-corrected Adam step, params -= lr * mhat / (sqrt(vhat) + eps).
template <typename Scalar>
void adam_step(AdamState<Scalar>& st, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& params,
               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& grad) {
  if (params.size() != grad.size() || st.m.size() != params.size())
    throw std::invalid_argument("adam_step: size mismatch");
  ++st.t;
  const Scalar b1 = static_cast<Scalar>(st.beta1);
  const Scalar b2 = static_cast<Scalar>(st.beta2);
  st.m = b1 * st.m + (Scalar(1) - b1) * grad;
  st.v = b2 * st.v + (Scalar(1) - b2) * grad.cwiseAbs2();
  const Scalar c1 = static_cast<Scalar>(1.0 - std::pow(st.beta1, static_cast<double>(st.t)));
  const Scalar c2 = static_cast<Scalar>(1.0 - std::pow(st.beta2, static_cast<double>(st.t)));
  const Scalar lr = static_cast<Scalar>(st.lr);
  const Scalar eps = static_cast<Scalar>(st.eps);
  params.array() -= lr * (st.m.array() / c1) / ((st.v.array() / c2).sqrt() + eps);
}

/// target <- (1 - tau) * target + tau * source.
template <typename Scalar>
void polyak_update(Mlp<Scalar>& target, const Mlp<Scalar>& source, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("polyak_update: tau outside [0, 1]");
  if (target.sizes() != source.sizes())
    throw std::invalid_argument("polyak_update: shape mismatch");
  if (tau == 1.0) {
    target.params() = source.params();
    return;
  }
  if (tau == 0.0) return;
  const Scalar t = static_cast<Scalar>(tau);
  target.params() = (Scalar(1) - t) * target.params() + t * source.params();
}

// Checkpoints: text header followed by one hexadecimal float per line, which
// round-trips every parameter bit-exactly.
//
//   dcil-mlp 1
//   sizes <n0> <n1> ...
//   seed <u64>
//   step <i64>
//   params <count>
//   <hexfloat>...

struct CheckpointInfo {
  std::uint64_t seed = 0;
  std::int64_t step = 0;
};

template <typename Scalar>
void write_mlp(std::ostream& out, const Mlp<Scalar>& net, const CheckpointInfo& info = {}) {
  out << "dcil-mlp 1\nsizes";
  for (int s : net.sizes()) out << ' ' << s;
  out << "\nseed " << info.seed << "\nstep " << info.step << "\nparams " << net.num_params()
      << "\n";
  out << std::hexfloat;
  for (Eigen::Index i = 0; i < net.num_params(); ++i)
    out << static_cast<double>(net.params()[i]) << "\n";
  out << std::defaultfloat;
}

template <typename Scalar>
Mlp<Scalar> read_mlp(std::istream& in, CheckpointInfo* info = nullptr) {
  auto fail = [](const std::string& what) {
    return std::runtime_error("checkpoint: " + what);
  };
  std::string line, key;
  if (!std::getline(in, line) || line != "dcil-mlp 1") throw fail("bad header");
  std::vector<int> sizes;
  CheckpointInfo ci;
  long count = -1;
  while (count < 0 && std::getline(in, line)) {
    std::istringstream ls(line);
    ls >> key;
    if (key == "sizes") {
      int s;
      while (ls >> s) sizes.push_back(s);
      if (!ls.eof()) throw fail("malformed field 'sizes'");
      continue;
    } else if (key == "seed") {
      ls >> ci.seed;
    } else if (key == "step") {
      ls >> ci.step;
    } else if (key == "params") {
      ls >> count;
    } else {
      throw fail("unknown field '" + key + "'");
    }
    if (ls.fail()) throw fail("malformed field '" + key + "'");
  }
  if (sizes.size() < 2) throw fail("missing layer sizes");
  Mlp<Scalar> net(sizes);
  if (count != net.num_params())
    throw fail("parameter count " + std::to_string(count) + " does not match layer sizes");
  for (long i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw fail("truncated at parameter " + std::to_string(i));
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0' || !std::isfinite(v))
      throw fail("invalid parameter " + std::to_string(i));
    net.params()[i] = static_cast<Scalar>(v);
  }
  if (info) *info = ci;
  return net;
}

template <typename Scalar>
void save_mlp(const Mlp<Scalar>& net, const std::string& path, const CheckpointInfo& info = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint '" + path + "'");
  write_mlp(out, net, info);
}

template <typename Scalar>
Mlp<Scalar> load_mlp(const std::string& path, CheckpointInfo* info = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  return read_mlp<Scalar>(in, info);
}

}  // namespace dcil
