#pragma once

// Dense Hermitian diagonalization, eigenstate ordering, and full-chain
// reference results (exact LIOMs and exact quench entropy).

#include "liomnet/spin_model.hpp"

#include <cstddef>
#include <vector>

namespace liomnet {

/// Largest number of sites handled by fully dense paths unless overridden.
inline constexpr int default_dense_limit = 12;

struct RawEigensystem {
  SiteRange support;
  RealVector values;  // ascending
  Matrix vectors;     // column k pairs with values[k]
};

/// Eigenvector matrix with column j assigned to basis state j.
struct OrderedUnitary {
  Matrix matrix;
  /// permutation[k] is the basis index assigned to eigenindex k.
  std::vector<std::size_t> permutation;
  /// Eigenvalue carried by each column of `matrix`.
  RealVector energies;
  SiteRange source_support;

  DenseOperator as_operator() const {
    return DenseOperator(source_support, matrix, OperatorKind::unitary);
  }
  static OrderedUnitary identity(SiteRange support);
};

RawEigensystem eig_hermitian(const DenseOperator& op);

/// Greedy global assignment of eigenvectors to basis states by amplitude.
///
/// All (eigenindex, basis index, |amplitude|) triples are visited in order of
/// decreasing magnitude (ties: lower basis index, then lower eigenindex) and a
/// pair is assigned whenever both members are still free. Each assigned entry
/// is then rotated to be real and nonnegative.
OrderedUnitary order_eigenstates(const RawEigensystem& raw);

inline OrderedUnitary diagonalize_ordered(const DenseOperator& h) {
  return order_eigenstates(eig_hermitian(h));
}

/// tau = U sigma^z_site U^dagger for the exactly diagonalized Hamiltonian of `window`.
DenseOperator exact_window_liom(const ChainSpec& spec, SiteRange window, int site,
                                int dense_limit = default_dense_limit);

/// Exact LIOM of the whole chain.
DenseOperator exact_liom(const ChainSpec& spec, int site, int dense_limit = default_dense_limit);

/// Full-chain dense quench dynamics from a fixed initial state.
class ExactQuench {
 public:
  ExactQuench(const ChainSpec& spec, const Vector& initial_state,
              int dense_limit = default_dense_limit);

  Vector state_at(double t) const;
  /// Entropy of sites [1, cut] at time t, in nats.
  double entropy_at(double t, int cut) const;

 private:
  int n_sites_;
  RealVector energies_;
  Matrix vectors_;
  Vector overlaps_;  // V^dagger psi0
};

/// Entropy of the left block [1, cut] after a Neel quench, for each time.
std::vector<double> exact_entropy_trace(const ChainSpec& spec, int cut,
                                        const std::vector<double>& times,
                                        int dense_limit = default_dense_limit);

}  // namespace liomnet
