#include "liomnet/exact_diag.hpp"

#include "liomnet/entanglement.hpp"
#include "liomnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace liomnet {

namespace {

void require_dense(int sites, int dense_limit, const char* what) {
  if (sites > dense_limit) {
    throw CapacityError(std::string(what) + " needs a dense " + std::to_string(sites) +
                        "-site matrix; dense limit is " + std::to_string(dense_limit) +
                        " (raise --dense-limit or shrink the system)");
  }
}

struct Candidate {
  double magnitude;
  std::uint32_t basis;
  std::uint32_t eigen;
};

}  // namespace

OrderedUnitary OrderedUnitary::identity(SiteRange support) {
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  OrderedUnitary u;
  u.matrix = Matrix::Identity(dim, dim);
  u.permutation.resize(support.dimension());
  for (std::size_t k = 0; k < u.permutation.size(); ++k) u.permutation[k] = k;
  u.energies = RealVector::Zero(dim);
  u.source_support = support;
  return u;
}

RawEigensystem eig_hermitian(const DenseOperator& op) {
  if (op.kind() != OperatorKind::hermitian ||
      op.hermiticity_defect() >= DenseOperator::hermitian_tolerance) {
    throw ContractError("eig_hermitian requires a Hermitian operator");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ContractError("Hermitian eigensolver did not converge");
  }
  return RawEigensystem{op.support(), solver.eigenvalues(), solver.eigenvectors()};
}

OrderedUnitary order_eigenstates(const RawEigensystem& raw) {
  const auto dim = static_cast<std::size_t>(raw.vectors.rows());
  std::vector<Candidate> candidates;
  candidates.reserve(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t b = 0; b < dim; ++b) {
      candidates.push_back({std::abs(raw.vectors(b, k)), static_cast<std::uint32_t>(b),
                            static_cast<std::uint32_t>(k)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    if (a.basis != b.basis) return a.basis < b.basis;
    return a.eigen < b.eigen;
  });

  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> permutation(dim, unassigned);
  std::vector<bool> basis_taken(dim, false);
  std::size_t assigned = 0;
  for (const Candidate& c : candidates) {
    if (assigned == dim) break;
    if (permutation[c.eigen] != unassigned || basis_taken[c.basis]) continue;
    permutation[c.eigen] = c.basis;
    basis_taken[c.basis] = true;
    ++assigned;
  }

  OrderedUnitary out;
  out.matrix.resize(raw.vectors.rows(), raw.vectors.cols());
  out.energies.resize(raw.values.size());
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t b = permutation[k];
    const Complex dominant = raw.vectors(b, k);
    const double mag = std::abs(dominant);
    const Complex gauge = mag > 0.0 ? std::conj(dominant) / mag : Complex{1.0, 0.0};
    out.matrix.col(b) = gauge * raw.vectors.col(k);
    out.matrix(b, b) = Complex{mag, 0.0};
    out.energies(b) = raw.values(k);
  }
  out.permutation = std::move(permutation);
  out.source_support = raw.support;
  return out;
}

DenseOperator exact_window_liom(const ChainSpec& spec, SiteRange window, int site,
                                int dense_limit) {
  require_dense(window.width(), dense_limit, "exact LIOM");
  if (!window.contains(site)) {
    throw ArgumentError("LIOM site " + std::to_string(site) + " outside its window");
  }
  const OrderedUnitary u = diagonalize_ordered(build_hamiltonian(spec, window));
  const Matrix rotated = apply_pauli_right(u.matrix, PauliAxis::z, window.bit_of(site));
  Matrix tau = rotated * u.matrix.adjoint();
  tau = (0.5 * (tau + tau.adjoint())).eval();
  return DenseOperator(window, std::move(tau), OperatorKind::hermitian);
}

DenseOperator exact_liom(const ChainSpec& spec, int site, int dense_limit) {
  spec.validate();
  return exact_window_liom(spec, spec.full_range(), site, dense_limit);
}

ExactQuench::ExactQuench(const ChainSpec& spec, const Vector& initial_state, int dense_limit)
    : n_sites_(spec.n_sites) {
  spec.validate();
  require_dense(spec.n_sites, dense_limit, "exact quench");
  if (static_cast<std::size_t>(initial_state.size()) != spec.full_range().dimension()) {
    throw ArgumentError("initial state dimension does not match the chain");
  }
  if (std::abs(initial_state.norm() - 1.0) > 1e-10) {
    throw ArgumentError("initial state must be normalized");
  }
  const RawEigensystem eig = eig_hermitian(build_hamiltonian(spec, spec.full_range()));
  energies_ = eig.values;
  vectors_ = eig.vectors;
  overlaps_ = vectors_.adjoint() * initial_state;
}

Vector ExactQuench::state_at(double t) const {
  Vector phased(overlaps_.size());
  for (Eigen::Index k = 0; k < overlaps_.size(); ++k) {
    phased(k) = std::polar(1.0, -energies_(k) * t) * overlaps_(k);
  }
  return vectors_ * phased;
}

double ExactQuench::entropy_at(double t, int cut) const {
  if (cut < 1 || cut >= n_sites_) throw ArgumentError("cut must split the chain");
  return von_neumann_entropy(reduced_density_matrix(state_at(t), cut, n_sites_));
}

std::vector<double> exact_entropy_trace(const ChainSpec& spec, int cut,
                                        const std::vector<double>& times, int dense_limit) {
  spec.validate();
  if (cut < 1 || cut >= spec.n_sites) throw ArgumentError("cut must split the chain");
  const ExactQuench quench(spec, neel_state(spec.n_sites), dense_limit);
  std::vector<double> entropy;
  entropy.reserve(times.size());
  for (double t : times) entropy.push_back(quench.entropy_at(t, cut));
  return entropy;
}

}  // namespace liomnet
