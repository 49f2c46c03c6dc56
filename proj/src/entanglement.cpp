#include "liomnet/entanglement.hpp"

#include "liomnet/errors.hpp"

#include <array>
#include <cmath>

namespace liomnet {

namespace {

constexpr double kEigenvalueFloor = 1e-14;
constexpr double kTraceTolerance = 1e-8;

// Index layout of a window state: i = ((a * dq + c) * dq + d) * dq + e, where
// a, c are the outer and inner quarters of the left block and d, e those of the
// right block. The bridge acts on k = c * dq + d.
struct QuarterGeometry {
  Eigen::Index dq;    // 2^(b/2)
  Eigen::Index half;  // 2^b, also the bridge dimension
  Eigen::Index dim;   // 2^(2b)

  explicit QuarterGeometry(const WindowLayout& layout)
      : dq(Eigen::Index{1} << layout.quarter()),
        half(Eigen::Index{1} << layout.block_legs),
        dim(half * half) {}
};

Matrix block_at_outer_left(const Matrix& left_op, Eigen::Index a, Eigen::Index dq) {
  return left_op.block(a * dq, a * dq, dq, dq);
}

Matrix block_at_outer_right(const Matrix& right_op, Eigen::Index e, Eigen::Index dq) {
  Matrix out(dq, dq);
  for (Eigen::Index r = 0; r < dq; ++r) {
    for (Eigen::Index c = 0; c < dq; ++c) out(r, c) = right_op(r * dq + e, c * dq + e);
  }
  return out;
}

RealVector dense_diagonal(const TwoLayerUnitary& net, const ChainSpec& spec, int dense_limit) {
  const DenseOperator u = compose_window_unitary(net, dense_limit);
  const DenseOperator h = build_hamiltonian(spec, net.layout.window);
  const Matrix hu = h.matrix() * u.matrix();
  return u.matrix().conjugate().cwiseProduct(hu).colwise().sum().real().transpose();
}

RealVector termwise_diagonal(const TwoLayerUnitary& net, const ChainSpec& spec) {
  const WindowLayout& layout = net.layout;
  const QuarterGeometry g(layout);
  const Matrix& u3 = net.u_bridge.matrix;

  // Bridge eigenvector k reshaped as X_k[c, d].
  std::vector<Matrix> x(static_cast<std::size_t>(g.half));
  for (Eigen::Index k = 0; k < g.half; ++k) {
    x[k] = Eigen::Map<const Matrix>(u3.col(k).data(), g.dq, g.dq).transpose();
  }

  const Matrix& u1 = net.u_left.matrix;
  const Matrix& u2 = net.u_right.matrix;
  const Matrix h1 = u1.adjoint() * build_hamiltonian(spec, layout.left_block()).matrix() * u1;
  const Matrix h2 = u2.adjoint() * build_hamiltonian(spec, layout.right_block()).matrix() * u2;

  // Quadratic forms of left-only pieces: Tr(X_k^dagger A_a X_k).
  Matrix left_part(g.dq, g.half);
  for (Eigen::Index a = 0; a < g.dq; ++a) {
    const Matrix block = block_at_outer_left(h1, a, g.dq);
    for (Eigen::Index k = 0; k < g.half; ++k) {
      left_part(a, k) = (x[k].adjoint() * block * x[k]).trace();
    }
  }
  // Right-only pieces: sum over (X_k^dagger X_k) o B_e.
  Matrix right_part(g.half, g.dq);
  for (Eigen::Index k = 0; k < g.half; ++k) {
    const Matrix gram = x[k].adjoint() * x[k];
    for (Eigen::Index e = 0; e < g.dq; ++e) {
      right_part(k, e) = gram.cwiseProduct(block_at_outer_right(h2, e, g.dq)).sum();
    }
  }

  // The bond across the cut factorizes into a left and a right operator per axis.
  Matrix bond_part = Matrix::Zero(g.dq * g.half, g.dq);
  const std::array<std::pair<PauliAxis, double>, 3> axes{{
      {PauliAxis::x, spec.coupling_j},
      {PauliAxis::y, spec.coupling_j},
      {PauliAxis::z, spec.anisotropy_delta},
  }};
  const int left_bit = layout.left_block().bit_of(layout.left_block().last);
  const int right_bit = layout.right_block().bit_of(layout.right_block().first);
  for (const auto& [axis, coefficient] : axes) {
    if (coefficient == 0.0) continue;
    const Matrix sl = u1.adjoint() * apply_pauli_left(axis, left_bit, u1);
    const Matrix sr = u2.adjoint() * apply_pauli_left(axis, right_bit, u2);
    Matrix forms(g.dq * g.half, g.dq * g.dq);
    for (Eigen::Index a = 0; a < g.dq; ++a) {
      const Matrix block = block_at_outer_left(sl, a, g.dq);
      for (Eigen::Index k = 0; k < g.half; ++k) {
        const Matrix quad = x[k].adjoint() * block * x[k];
        forms.row(a * g.half + k) = Eigen::Map<const Eigen::RowVectorXcd>(quad.data(), quad.size());
      }
    }
    Matrix right_blocks(g.dq * g.dq, g.dq);
    for (Eigen::Index e = 0; e < g.dq; ++e) {
      const Matrix block = block_at_outer_right(sr, e, g.dq);
      right_blocks.col(e) = Eigen::Map<const Vector>(block.data(), block.size());
    }
    bond_part.noalias() += coefficient * (forms * right_blocks);
  }

  RealVector d(g.dim);
  for (Eigen::Index a = 0; a < g.dq; ++a) {
    for (Eigen::Index k = 0; k < g.half; ++k) {
      for (Eigen::Index e = 0; e < g.dq; ++e) {
        const Complex value = left_part(a, k) + right_part(k, e) + bond_part(a * g.half + k, e);
        d((a * g.half + k) * g.dq + e) = value.real();
      }
    }
  }
  return d;
}

void require_window_state(const TwoLayerUnitary& net, const Vector& psi) {
  if (static_cast<std::size_t>(psi.size()) != net.layout.window.dimension()) {
    throw ArgumentError("state dimension does not match the window");
  }
}

}  // namespace

void TimeGrid::validate() const {
  if (points.empty()) throw ArgumentError("time grid is empty");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(points[k]) || points[k] <= 0.0) {
      throw ArgumentError("time points must be finite and positive");
    }
    if (k > 0 && points[k] <= points[k - 1]) {
      throw ArgumentError("time points must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::log_spaced(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max) || count < 1) {
    throw ArgumentError("log grid needs 0 < t_min < t_max and at least one point");
  }
  TimeGrid grid;
  if (count == 1) {
    grid.points = {t_min};
    return grid;
  }
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / static_cast<double>(count - 1);
  grid.points.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count - 1; ++k) grid.points.push_back(std::exp(lo + step * k));
  grid.points.push_back(t_max);
  grid.validate();
  return grid;
}

Vector neel_state(int n_sites) {
  if (n_sites < 1) throw ArgumentError("Neel state needs at least one site");
  std::string bits(static_cast<std::size_t>(n_sites), '0');
  for (std::size_t k = 1; k < bits.size(); k += 2) bits[k] = '1';
  return product_state(bits);
}

Vector product_state(const std::string& bits) {
  if (bits.empty() || bits.size() > 30) throw ArgumentError("product state needs 1..30 sites");
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ArgumentError("product state bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(ch == '1');
  }
  Vector psi = Vector::Zero(Eigen::Index{1} << bits.size());
  psi(static_cast<Eigen::Index>(index)) = 1.0;
  return psi;
}

Matrix reduced_density_matrix(const Vector& psi, int left_sites, int total_sites) {
  if (left_sites < 0 || left_sites > total_sites ||
      psi.size() != (Eigen::Index{1} << total_sites)) {
    throw ArgumentError("state does not match the requested bipartition");
  }
  const Eigen::Index left_dim = Eigen::Index{1} << left_sites;
  const Eigen::Index right_dim = psi.size() / left_dim;
  // Column-major view: entry (right, left) = psi[left * right_dim + right].
  const Eigen::Map<const Matrix> amplitudes(psi.data(), right_dim, left_dim);
  return amplitudes.transpose() * amplitudes.conjugate();
}

double von_neumann_entropy(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw ContractError("density matrix must be square");
  }
  const Complex trace = rho.trace();
  if (std::abs(trace - Complex{1.0, 0.0}) > kTraceTolerance) {
    throw ContractError("density matrix trace deviates from 1");
  }
  const Matrix hermitian = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda > kEigenvalueFloor) entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

RealVector diagonal_hamiltonian(const TwoLayerUnitary& net, const ChainSpec& spec,
                                DiagonalPath path, int dense_limit) {
  spec.validate();
  if (!spec.full_range().contains(net.layout.window)) {
    throw ArgumentError("window lies outside the chain");
  }
  if (path == DiagonalPath::automatic) {
    path = net.layout.window.width() <= automatic_dense_sites ? DiagonalPath::dense
                                                               : DiagonalPath::termwise;
  }
  if (path == DiagonalPath::dense) return dense_diagonal(net, spec, dense_limit);
  return termwise_diagonal(net, spec);
}

Vector apply_first_layer_adjoint(const TwoLayerUnitary& net, const Vector& psi) {
  require_window_state(net, psi);
  const Eigen::Index half = net.u_left.matrix.rows();
  const Eigen::Map<const Matrix> in(psi.data(), half, half);  // (right, left)
  Vector out(psi.size());
  Eigen::Map<Matrix> result(out.data(), half, half);
  result.noalias() = net.u_right.matrix.adjoint() * in * net.u_left.matrix.conjugate();
  return out;
}

Vector apply_bridge(const TwoLayerUnitary& net, const Vector& psi, bool adjoint) {
  require_window_state(net, psi);
  const QuarterGeometry g(net.layout);
  const Matrix factor =
      adjoint ? Matrix(net.u_bridge.matrix.conjugate()) : Matrix(net.u_bridge.matrix.transpose());
  Vector out(psi.size());
  const Eigen::Index slab = g.half * g.dq;
  for (Eigen::Index a = 0; a < g.dq; ++a) {
    const Eigen::Map<const Matrix> in(psi.data() + a * slab, g.dq, g.half);  // (e, k)
    Eigen::Map<Matrix> result(out.data() + a * slab, g.dq, g.half);
    result.noalias() = in * factor;
  }
  return out;
}

TwoBlockEvolver::TwoBlockEvolver(const TwoLayerUnitary& net, RealVector diagonal,
                                 const Vector& psi0)
    : net_(net), diagonal_(std::move(diagonal)) {
  require_window_state(net_, psi0);
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw ArgumentError("initial window state must be normalized");
  }
  if (diagonal_.size() != psi0.size()) {
    throw ArgumentError("diagonal length does not match the window");
  }
  rotated_initial_ = apply_bridge(net_, apply_first_layer_adjoint(net_, psi0), true);
}

Vector TwoBlockEvolver::evolved_state(double t) const {
  Vector phased(rotated_initial_.size());
  for (Eigen::Index i = 0; i < phased.size(); ++i) {
    phased(i) = std::polar(1.0, -diagonal_(i) * t) * rotated_initial_(i);
  }
  return apply_bridge(net_, phased, false);
}

Matrix TwoBlockEvolver::reduced_density(double t) const {
  const int b = net_.layout.block_legs;
  return reduced_density_matrix(evolved_state(t), b, 2 * b);
}

Matrix evolve_two_block(const TwoLayerUnitary& net, const RealVector& diagonal, double t,
                        const Vector& psi0) {
  return TwoBlockEvolver(net, diagonal, psi0).reduced_density(t);
}

EntanglementTrace tn_entropy_trace(const ChainSpec& spec, const WindowLayout& layout,
                                   const TimeGrid& grid, const EntropyOptions& options) {
  grid.validate();
  const TwoLayerUnitary net = build_network(spec, layout, options.dense_limit);
  RealVector d = diagonal_hamiltonian(net, spec, options.path, options.dense_limit);
  const Vector psi0 = options.initial_bits.empty() ? neel_state(layout.window.width())
                                                   : product_state(options.initial_bits);
  const TwoBlockEvolver evolver(net, std::move(d), psi0);

  EntanglementTrace trace;
  trace.grid = grid;
  trace.block_legs = layout.block_legs;
  trace.disorder_w = spec.disorder_w;
  trace.entropy.reserve(grid.points.size());
  for (double t : grid.points) trace.entropy.push_back(evolver.entropy(t));
  return trace;
}

}  // namespace liomnet
