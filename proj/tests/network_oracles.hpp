#pragma once

// Literal second implementations of the network constructions.

#include "liomnet/tensor_network.hpp"
#include "oracles.hpp"

namespace oracle {

inline std::vector<double> slice(const std::vector<double>& h, int first, int count) {
  return {h.begin() + (first - 1), h.begin() + (first - 1 + count)};
}

inline Matrix bridge(const liomnet::ChainSpec& spec, const liomnet::WindowLayout& layout,
                     const Matrix& u1, const Matrix& u2) {
  const int b = layout.block_legs, q = b / 2;
  const Eigen::Index dq = Eigen::Index{1} << q;
  const Matrix h1 = xxz(spec.coupling_j, spec.anisotropy_delta,
                        slice(spec.fields, layout.left_block().first, b));
  const Matrix h2 = xxz(spec.coupling_j, spec.anisotropy_delta,
                        slice(spec.fields, layout.right_block().first, b));
  const Matrix h1d = u1.adjoint() * h1 * u1;
  const Matrix h2d = u2.adjoint() * h2 * u2;
  Matrix h3 = kron(partial_trace(h1d, b, q + 1, b), eye(dq)) +
              kron(eye(dq), partial_trace(h2d, b, 1, q));
  for (char axis : {'x', 'y', 'z'}) {
    const double c = axis == 'z' ? spec.anisotropy_delta : spec.coupling_j;
    const Matrix s1 = u1.adjoint() * at_site(sigma(axis), b, b) * u1;
    const Matrix s2 = u2.adjoint() * at_site(sigma(axis), 1, b) * u2;
    h3 += c * kron(partial_trace(s1, b, q + 1, b), partial_trace(s2, b, 1, q));
  }
  return h3;
}

inline Matrix compose(const liomnet::TwoLayerUnitary& net) {
  const Eigen::Index dq = Eigen::Index{1} << net.layout.quarter();
  return kron(net.u_left.matrix, net.u_right.matrix) *
         kron(kron(eye(dq), net.u_bridge.matrix), eye(dq));
}

inline liomnet::RealVector diagonal(const liomnet::TwoLayerUnitary& net,
                                    const liomnet::ChainSpec& spec) {
  const Matrix h = xxz(spec.coupling_j, spec.anisotropy_delta,
                       slice(spec.fields, net.layout.window.first, net.layout.window.width()));
  const Matrix uc = compose(net);
  return (uc.adjoint() * h * uc).diagonal().real();
}

}  // namespace oracle
