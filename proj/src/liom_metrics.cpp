#include "liomnet/liom_metrics.hpp"

#include "liomnet/errors.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <string>

namespace liomnet {

namespace {

void require_same_support(const DenseOperator& tau, const DenseOperator& h) {
  if (tau.support() != h.support()) {
    throw ArgumentError("tau and the Hamiltonian must share their support");
  }
}

// Tr(A B) for square matrices, without forming the product.
Complex trace_of_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace

double merit(const DenseOperator& tau, const DenseOperator& h) {
  require_same_support(tau, h);
  // With tau^2 = I, Tr H^2 - Tr(H tau H tau) = (1/2)|X - X^dagger|^2 for X = H tau.
  const Matrix& hm = h.matrix();
  const Eigen::SparseMatrix<Complex> sparse = hm.sparseView();
  const Matrix h_tau = 8 * sparse.nonZeros() < hm.size() ? Matrix(sparse * tau.matrix())
                                                         : Matrix(hm * tau.matrix());
  const double squared = (h_tau - h_tau.adjoint()).cwiseAbs2().sum();
  return 0.5 * squared / static_cast<double>(h.dimension());
}

double merit_commutator(const DenseOperator& tau, const DenseOperator& h) {
  require_same_support(tau, h);
  const Matrix commutator = tau.matrix() * h.matrix() - h.matrix() * tau.matrix();
  return 0.5 * commutator.cwiseAbs2().sum() / static_cast<double>(h.dimension());
}

double pauli_sandwich(const DenseOperator& tau, int site, PauliAxis axis) {
  if (!tau.support().contains(site)) throw ArgumentError("site outside tau's support");
  const int bit = tau.support().bit_of(site);
  const Matrix& t = tau.matrix();
  if (tau.kind() != OperatorKind::hermitian) {
    const Matrix sigma_tau = apply_pauli_left(axis, bit, t);
    return trace_of_product(sigma_tau, sigma_tau).real() / static_cast<double>(tau.dimension());
  }
  // sigma = s(r) |f(r)><r| up to transposition. For Hermitian tau,
  // Tr(sigma tau sigma tau) = sum_{r,c} s(r) s(c) tau(f(r), c) conj(tau(r, f(c))).
  const Eigen::Index mask = axis == PauliAxis::z ? 0 : Eigen::Index{1} << bit;
  const Eigen::Index bit_mask = Eigen::Index{1} << bit;
  auto sign = [&](Eigen::Index r) -> Complex {
    const bool down = (r & bit_mask) != 0;
    switch (axis) {
      case PauliAxis::x: return 1.0;
      case PauliAxis::y: return down ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
      default: return down ? -1.0 : 1.0;
    }
  };
  const Eigen::Index dim = t.rows();
  Complex total = 0.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto col = t.col(c);
    const auto partner = t.col(c ^ mask);
    Complex inner = 0.0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      inner += sign(r) * col(r ^ mask) * std::conj(partner(r));
    }
    total += sign(c) * inner;
  }
  return total.real() / static_cast<double>(dim);
}

MeritReport merit_split(const DenseOperator& tau, const ChainSpec& spec, SiteRange window) {
  spec.validate();
  if (tau.support() != window) throw ArgumentError("tau must be supported on the window");
  if (!spec.full_range().contains(window)) throw ArgumentError("window lies outside the chain");

  MeritReport report;
  report.disorder_w = spec.disorder_w;
  report.size_param = window.width();
  report.delta_interior = merit(tau, build_hamiltonian(spec, window));

  const double j2 = spec.coupling_j * spec.coupling_j;
  const double d2 = spec.anisotropy_delta * spec.anisotropy_delta;
  auto edge_share = [&](int edge) {
    return (2.0 * j2 + d2) - j2 * pauli_sandwich(tau, edge, PauliAxis::x) -
           j2 * pauli_sandwich(tau, edge, PauliAxis::y) -
           d2 * pauli_sandwich(tau, edge, PauliAxis::z);
  };
  double boundary = 0.0;
  if (window.first > 1) boundary += edge_share(window.first);
  if (window.last < spec.n_sites) boundary += edge_share(window.last);
  report.delta_boundary = boundary;
  report.delta_total = report.delta_interior + report.delta_boundary;
  return report;
}

MeritReport merit_split(const DenseOperator& tau, const ChainSpec& spec,
                        const WindowLayout& layout) {
  MeritReport report = merit_split(tau, spec, layout.window);
  report.size_param = layout.block_legs;
  return report;
}

double sigma_merit_analytic(const ChainSpec& spec, int site) {
  spec.validate();
  if (site < 1 || site > spec.n_sites) {
    throw ArgumentError("site " + std::to_string(site) + " outside the chain");
  }
  const double j2 = spec.coupling_j * spec.coupling_j;
  const bool chain_end = site == 1 || site == spec.n_sites;
  return chain_end ? 4.0 * j2 : 8.0 * j2;
}

}  // namespace liomnet
