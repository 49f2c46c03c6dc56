#pragma once

// Commutator figure of merit for approximate LIOMs:
//
//   merit(tau, H) = 2^-n (Tr H^2 - Tr(H tau H tau)) = 2^-n (1/2) Tr([tau,H][tau,H]^dagger)
//
// For a tau confined to a window inside a longer chain the merit splits into
// an interior part from the window Hamiltonian and a boundary part from the two
// bonds that leave the window.

#include "liomnet/spin_model.hpp"
#include "liomnet/tensor_network.hpp"

#include <cstdint>

namespace liomnet {

struct MeritReport {
  int site = 0;
  double delta_total = 0.0;
  double delta_interior = 0.0;
  double delta_boundary = 0.0;
  double disorder_w = 0.0;
  int size_param = 0;  // block legs for the network, chain sites for exact LIOMs
  std::uint64_t realization = 0;
};

/// Trace-difference route, evaluated from the single product H tau.
double merit(const DenseOperator& tau, const DenseOperator& h);

/// Explicit-commutator route; same quantity, kept as an independent check.
double merit_commutator(const DenseOperator& tau, const DenseOperator& h);

/// 2^-n Tr(sigma^axis_site tau sigma^axis_site tau) without forming sigma densely.
double pauli_sandwich(const DenseOperator& tau, int site, PauliAxis axis);

/// Interior/boundary decomposition for tau supported on `window` within spec's chain.
/// Boundary bonds that would leave the chain are dropped.
MeritReport merit_split(const DenseOperator& tau, const ChainSpec& spec, SiteRange window);
MeritReport merit_split(const DenseOperator& tau, const ChainSpec& spec,
                        const WindowLayout& layout);

/// Merit of a bare sigma^z: 8 J^2 in the bulk, 4 J^2 at either chain end.
double sigma_merit_analytic(const ChainSpec& spec, int site);

}  // namespace liomnet
