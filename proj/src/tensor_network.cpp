#include "liomnet/tensor_network.hpp"

#include "liomnet/errors.hpp"

#include <array>
#include <string>

namespace liomnet {

namespace {

constexpr std::array<PauliAxis, 3> kAxes{PauliAxis::x, PauliAxis::y, PauliAxis::z};

double bond_coefficient(const ChainSpec& spec, PauliAxis axis) {
  return axis == PauliAxis::z ? spec.anisotropy_delta : spec.coupling_j;
}

// U^dagger sigma^axis_site U for a block unitary.
Matrix rotated_pauli(const OrderedUnitary& u, int site, PauliAxis axis) {
  const Matrix sigma_u =
      apply_pauli_left(axis, u.source_support.bit_of(site), u.matrix);
  return u.matrix.adjoint() * sigma_u;
}

DenseOperator symmetrized(SiteRange support, const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return DenseOperator(support, std::move(h), OperatorKind::hermitian);
}

}  // namespace

WindowLayout WindowLayout::make(int block_legs, int first_site) {
  if (block_legs < 2 || block_legs % 2 != 0) {
    throw ArgumentError("block_legs must be even and >= 2, got " + std::to_string(block_legs));
  }
  WindowLayout layout;
  layout.block_legs = block_legs;
  layout.window = SiteRange(first_site, first_site + 2 * block_legs - 1);
  return layout;
}

FirstLayer first_layer(const ChainSpec& spec, const WindowLayout& layout, int dense_limit) {
  spec.validate();
  if (!spec.full_range().contains(layout.window)) {
    throw ArgumentError("window lies outside the chain");
  }
  if (layout.block_legs > dense_limit) {
    throw CapacityError("block of " + std::to_string(layout.block_legs) +
                        " sites exceeds dense limit " + std::to_string(dense_limit));
  }
  auto diagonalized = [&](SiteRange block) {
    const DenseOperator h = build_hamiltonian(spec, block);
    OrderedUnitary u = diagonalize_ordered(h);
    const Matrix rotated = u.matrix.adjoint() * h.matrix() * u.matrix;
    DenseOperator diag = symmetrized(block, rotated);
    return std::pair{std::move(u), std::move(diag)};
  };
  auto [u_left, h_left] = diagonalized(layout.left_block());
  auto [u_right, h_right] = diagonalized(layout.right_block());
  return FirstLayer{std::move(u_left), std::move(u_right), std::move(h_left), std::move(h_right)};
}

DenseOperator partial_trace(const DenseOperator& op, SiteRange keep) {
  const SiteRange& src = op.support();
  if (!src.contains(keep)) throw ArgumentError("kept sites must lie inside the support");
  const std::size_t pre = std::size_t{1} << (keep.first - src.first);
  const std::size_t post = std::size_t{1} << (src.last - keep.last);
  const std::size_t inner = keep.dimension();
  const auto dim = static_cast<Eigen::Index>(inner);
  const Matrix& m = op.matrix();

  Matrix reduced = Matrix::Zero(dim, dim);
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t c = 0; c < inner; ++c) {
      for (std::size_t r = 0; r < inner; ++r) {
        const std::size_t row0 = (p * inner + r) * post;
        const std::size_t col0 = (p * inner + c) * post;
        Complex acc{};
        for (std::size_t q = 0; q < post; ++q) acc += m(row0 + q, col0 + q);
        reduced(r, c) += acc;
      }
    }
  }
  reduced /= static_cast<double>(pre * post);
  const OperatorKind kind =
      op.kind() == OperatorKind::hermitian ? OperatorKind::hermitian : OperatorKind::general;
  if (kind == OperatorKind::hermitian) return symmetrized(keep, reduced);
  return DenseOperator(keep, std::move(reduced), kind);
}

DenseOperator project_and_expand(const DenseOperator& op, SiteRange keep, SiteRange target) {
  if (!target.contains(keep)) throw ArgumentError("kept sites must lie inside the target");
  const DenseOperator reduced = partial_trace(op, keep);
  const DenseOperator expanded = embed_operator(reduced, target);
  return symmetrized(target, expanded.matrix());
}

DenseOperator bridge_hamiltonian(const ChainSpec& spec, const WindowLayout& layout,
                                 const OrderedUnitary& u_left, const OrderedUnitary& u_right,
                                 const DenseOperator& h_left_diag,
                                 const DenseOperator& h_right_diag) {
  const SiteRange middle = layout.bridge();
  const SiteRange left_inner = layout.left_inner();
  const SiteRange right_inner = layout.right_inner();
  if (u_left.source_support != layout.left_block() ||
      u_right.source_support != layout.right_block()) {
    throw ArgumentError("first-layer unitaries do not match the window layout");
  }

  Matrix h3 = project_and_expand(h_left_diag, left_inner, middle).matrix() +
              project_and_expand(h_right_diag, right_inner, middle).matrix();

  // Boundary bond across the cut, rewritten in the first-layer eigenbases.
  const int left_edge = layout.left_block().last;
  const int right_edge = layout.right_block().first;
  for (PauliAxis axis : kAxes) {
    const double coefficient = bond_coefficient(spec, axis);
    if (coefficient == 0.0) continue;
    const DenseOperator left(u_left.source_support, rotated_pauli(u_left, left_edge, axis),
                             OperatorKind::general);
    const DenseOperator right(u_right.source_support, rotated_pauli(u_right, right_edge, axis),
                              OperatorKind::general);
    const Matrix left_mid = embed_operator(partial_trace(left, left_inner), middle).matrix();
    const Matrix right_mid = embed_operator(partial_trace(right, right_inner), middle).matrix();
    h3 += coefficient * (left_mid * right_mid);
  }
  return symmetrized(middle, h3);
}

OrderedUnitary second_layer(const DenseOperator& h3) { return diagonalize_ordered(h3); }

TwoLayerUnitary build_network(const ChainSpec& spec, const WindowLayout& layout,
                              int dense_limit) {
  FirstLayer first = first_layer(spec, layout, dense_limit);
  const DenseOperator h3 = bridge_hamiltonian(spec, layout, first.u_left, first.u_right,
                                              first.h_left_diag, first.h_right_diag);
  OrderedUnitary bridge = second_layer(h3);
  return TwoLayerUnitary{layout, std::move(first.u_left), std::move(first.u_right),
                         std::move(bridge)};
}

namespace {

// (U_left (x) U_right) m, applying the two block unitaries one at a time.
Matrix apply_first_layer(const TwoLayerUnitary& net, const Matrix& m) {
  const auto half = static_cast<Eigen::Index>(net.u_left.matrix.rows());
  const Eigen::Index dim = half * half;
  const Eigen::Index cols = m.cols();
  Matrix out(dim, cols);
  Eigen::Map<const Matrix> in_right(m.data(), half, half * cols);
  Eigen::Map<Matrix>(out.data(), half, half * cols).noalias() = net.u_right.matrix * in_right;
  const Matrix left_t = net.u_left.matrix.transpose();
  Matrix scratch(half, half);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::Map<Matrix> column(out.data() + c * dim, half, half);
    scratch.noalias() = column * left_t;
    column = scratch;
  }
  return out;
}

}  // namespace

DenseOperator compose_window_unitary(const TwoLayerUnitary& net, int dense_limit) {
  const WindowLayout& layout = net.layout;
  if (layout.window.width() > dense_limit) {
    throw CapacityError("dense window unitary on " + std::to_string(layout.window.width()) +
                        " sites exceeds dense limit " + std::to_string(dense_limit));
  }
  const auto half = static_cast<Eigen::Index>(layout.left_block().dimension());
  const auto dim = half * half;
  // Column-wise Kronecker product of the first layer, then the embedded bridge.
  Matrix first(dim, dim);
  for (Eigen::Index a = 0; a < half; ++a) {
    for (Eigen::Index c = 0; c < half; ++c) {
      first.block(a * half, c * half, half, half) = net.u_left.matrix(a, c) * net.u_right.matrix;
    }
  }
  // Right-multiply by I (x) U_bridge (x) I one (outer-left, outer-right) slice at a time.
  const Eigen::Index quarter_dim = Eigen::Index{1} << layout.quarter();
  const auto bridge_dim = static_cast<Eigen::Index>(net.u_bridge.matrix.rows());
  Matrix composed(dim, dim);
  using Strided = Eigen::Map<Matrix, 0, Eigen::OuterStride<>>;
  using ConstStrided = Eigen::Map<const Matrix, 0, Eigen::OuterStride<>>;
  for (Eigen::Index a = 0; a < quarter_dim; ++a) {
    for (Eigen::Index e = 0; e < quarter_dim; ++e) {
      const Eigen::Index offset = (a * bridge_dim * quarter_dim + e) * dim;
      const Eigen::OuterStride<> stride(quarter_dim * dim);
      ConstStrided cols(first.data() + offset, dim, bridge_dim, stride);
      Strided out(composed.data() + offset, dim, bridge_dim, stride);
      out.noalias() = cols * net.u_bridge.matrix;
    }
  }
  return DenseOperator(layout.window, std::move(composed), OperatorKind::unitary);
}

DenseOperator tn_liom(const TwoLayerUnitary& net, int site, int dense_limit) {
  const WindowLayout& layout = net.layout;
  if (!layout.bridge().contains(site)) {
    throw ArgumentError("site " + std::to_string(site) +
                        " is outside the middle half of the window");
  }
  if (layout.window.width() > dense_limit) {
    throw CapacityError("dense LIOM on " + std::to_string(layout.window.width()) +
                        " sites exceeds dense limit " + std::to_string(dense_limit));
  }
  // tau = V (I (x) tau_bridge (x) I) V^dagger with V = U_left (x) U_right.
  const Matrix& u3 = net.u_bridge.matrix;
  const Matrix tau_bridge =
      apply_pauli_right(u3, PauliAxis::z, layout.bridge().bit_of(site)) * u3.adjoint();
  const Matrix inner =
      embed_operator(DenseOperator(layout.bridge(), tau_bridge, OperatorKind::general),
                     layout.window)
          .matrix();
  const Matrix half_rotated = apply_first_layer(net, inner);
  Matrix tau = apply_first_layer(net, half_rotated.adjoint());
  tau = (0.5 * (tau + tau.adjoint())).eval();
  return DenseOperator(layout.window, std::move(tau), OperatorKind::hermitian);
}

DenseOperator tn_liom(const ChainSpec& spec, const WindowLayout& layout, int site,
                      int dense_limit) {
  if (!layout.bridge().contains(site)) {
    throw ArgumentError("site " + std::to_string(site) +
                        " is outside the middle half of the window");
  }
  return tn_liom(build_network(spec, layout, dense_limit), site, dense_limit);
}

}  // namespace liomnet
