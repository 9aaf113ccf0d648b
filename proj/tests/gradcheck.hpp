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

// Central-difference gradient oracle shared by the network tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "dcil/mlp.hpp"

namespace dcil::testing_util {

/// Relative error with an absolute floor so that coordinates whose true
/// gradient is (near) zero do not blow the ratio up.
inline double rel_error(double analytic, double numeric, double floor = 1e-4) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

/// Central difference of f with respect to every entry of `x`, which is
/// perturbed in place and restored.
inline Eigen::VectorXd numeric_gradient(const std::function<double()>& f, Eigen::VectorXd& x,
                                        double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double keep = x(i);
    x(i) = keep + h;
    const double fp = f();
    x(i) = keep - h;
    const double fm = f();
    x(i) = keep;
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct GradCheck {
  double max_rel_error = 0.0;
  Eigen::Index worst_index = -1;
  double max_input_rel_error = 0.0;
};

/// Random network with random biases, loss = sum(c .* f(x)) on a small batch,
/// checked against central differences for parameters and inputs.
inline GradCheck check_mlp_gradient(const std::vector<int>& sizes, Rng& rng, int batch = 4) {
  using Net = Mlp<double>;
  Net net = Net::random(sizes, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t l = 0; l < net.num_layers(); ++l)
    for (Eigen::Index i = 0; i < net.biases(l).size(); ++i) net.biases(l)(i) = 0.1 * u(rng);
  Net::Matrix x(sizes.front(), batch), c(sizes.back(), batch);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = u(rng);

  auto loss = [&]() { return net.forward(x).cwiseProduct(c).sum(); };
  Net::Tape tape;
  net.forward(x, tape);
  Net::Vector g = Net::Vector::Zero(net.num_params());
  const Net::Matrix dx = net.backward(tape, c, &g);

  GradCheck res;
  const Eigen::VectorXd num = numeric_gradient(loss, net.params());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double e = rel_error(g(i), num(i));
    if (e > res.max_rel_error) {
      res.max_rel_error = e;
      res.worst_index = i;
    }
  }
  Eigen::VectorXd flat = Eigen::Map<Eigen::VectorXd>(x.data(), x.size());
  auto input_loss = [&]() {
    Net::Matrix xx = Eigen::Map<Net::Matrix>(flat.data(), x.rows(), x.cols());
    return net.forward(xx).cwiseProduct(c).sum();
  };
  const Eigen::VectorXd num_x = numeric_gradient(input_loss, flat);
  for (Eigen::Index i = 0; i < num_x.size(); ++i)
    res.max_input_rel_error = std::max(res.max_input_rel_error, rel_error(dx.data()[i], num_x(i)));
  return res;
}

}  // namespace dcil::testing_util
