#pragma once

// Quench entanglement from the two-block reduction of the tensor network:
// rotate the window Hamiltonian into the LIOM basis, keep its diagonal, evolve
// by pure phases, undo only the bridge unitary, and cut between the blocks.

#include "liomnet/tensor_network.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace liomnet {

struct TimeGrid {
  std::vector<double> points;  // strictly increasing, > 0, units of 1/J

  void validate() const;
  static TimeGrid log_spaced(double t_min, double t_max, int count);
};

struct EntanglementTrace {
  TimeGrid grid;
  std::vector<double> entropy;  // nats
  int block_legs = 0;
  double disorder_w = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
};

/// |up down up down ...>; site 1 is spin-up.
Vector neel_state(int n_sites);
/// Product basis state from a string of '0' (up) / '1' (down), site 1 first.
Vector product_state(const std::string& bits);

/// rho_A = Tr_B |psi><psi| keeping the first `left_sites` of `total_sites`.
Matrix reduced_density_matrix(const Vector& psi, int left_sites, int total_sites);

/// -sum lambda ln lambda over eigenvalues above 1e-14.
double von_neumann_entropy(const Matrix& rho);

enum class DiagonalPath {
  automatic,  // dense for small windows, term-wise otherwise
  dense,      // diag(U_C^dagger H U_C) with the full window unitary
  termwise,   // conjugate each Hamiltonian piece only by the unitaries it meets
};

/// Windows up to this many sites use the dense path under DiagonalPath::automatic.
inline constexpr int automatic_dense_sites = 8;

/// Diagonal of U_C^dagger H_window U_C, indexed by window basis state.
RealVector diagonal_hamiltonian(const TwoLayerUnitary& net, const ChainSpec& spec,
                                DiagonalPath path = DiagonalPath::automatic,
                                int dense_limit = default_dense_limit);

// Window-state actions of the network pieces, without forming U_C.
Vector apply_first_layer_adjoint(const TwoLayerUnitary& net, const Vector& psi);
Vector apply_bridge(const TwoLayerUnitary& net, const Vector& psi, bool adjoint);

/// Reusable time sweep for one network: holds D and U_C^dagger |psi0>.
class TwoBlockEvolver {
 public:
  TwoBlockEvolver(const TwoLayerUnitary& net, RealVector diagonal, const Vector& psi0);

  /// Reduced density matrix of the left block at time t.
  Matrix reduced_density(double t) const;
  /// Window state just before the cut is taken, U_bridge exp(-iDt) U_C^dagger|psi0>.
  Vector evolved_state(double t) const;
  double entropy(double t) const { return von_neumann_entropy(reduced_density(t)); }

 private:
  TwoLayerUnitary net_;
  RealVector diagonal_;
  Vector rotated_initial_;
};

Matrix evolve_two_block(const TwoLayerUnitary& net, const RealVector& diagonal, double t,
                        const Vector& psi0);

struct EntropyOptions {
  DiagonalPath path = DiagonalPath::automatic;
  int dense_limit = default_dense_limit;
  /// Empty means the Neel state.
  std::string initial_bits;
};

/// Builds the network on the window (cut between its two blocks) and sweeps the grid.
EntanglementTrace tn_entropy_trace(const ChainSpec& spec, const WindowLayout& layout,
                                   const TimeGrid& grid, const EntropyOptions& options = {});

}  // namespace liomnet
