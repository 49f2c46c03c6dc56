#pragma once

// Two-layer tensor network of ordered block unitaries on a 2b-site window.
//
//   layer 1:  U_left on [1, b]           U_right on [b+1, 2b]
//   layer 2:            U_bridge on [b/2+1, 3b/2]
//
// Site numbers above are window-local; all ranges stored below are chain sites.

#include "liomnet/exact_diag.hpp"
#include "liomnet/spin_model.hpp"

namespace liomnet {

struct WindowLayout {
  int block_legs = 0;  // b, sites per block unitary
  SiteRange window;    // 2b sites

  /// Window of 2*block_legs sites starting at chain site `first_site`.
  static WindowLayout make(int block_legs, int first_site = 1);

  int quarter() const { return block_legs / 2; }
  SiteRange left_block() const { return {window.first, window.first + block_legs - 1}; }
  SiteRange right_block() const { return {window.first + block_legs, window.last}; }
  SiteRange bridge() const {
    return {window.first + quarter(), window.first + quarter() + block_legs - 1};
  }
  /// Right half of the left block and left half of the right block.
  SiteRange left_inner() const { return {window.first + quarter(), window.first + block_legs - 1}; }
  SiteRange right_inner() const {
    return {window.first + block_legs, window.first + block_legs + quarter() - 1};
  }
  /// Left-middle site, where merit experiments place their LIOM.
  int center_site() const { return window.first + block_legs - 1; }
};

struct FirstLayer {
  OrderedUnitary u_left;
  OrderedUnitary u_right;
  DenseOperator h_left_diag;   // U_left^dagger H_left U_left
  DenseOperator h_right_diag;  // U_right^dagger H_right U_right
};

struct TwoLayerUnitary {
  WindowLayout layout;
  OrderedUnitary u_left;
  OrderedUnitary u_right;
  OrderedUnitary u_bridge;
};

FirstLayer first_layer(const ChainSpec& spec, const WindowLayout& layout,
                       int dense_limit = default_dense_limit);

/// Normalized partial trace onto `keep` (identity maps to identity).
DenseOperator partial_trace(const DenseOperator& op, SiteRange keep);

/// Normalized partial trace onto `keep`, embedded in `target`, re-symmetrized.
DenseOperator project_and_expand(const DenseOperator& op, SiteRange keep, SiteRange target);

/// Second-layer Hamiltonian H01 + H12 + H02 on the bridge sites.
DenseOperator bridge_hamiltonian(const ChainSpec& spec, const WindowLayout& layout,
                                 const OrderedUnitary& u_left, const OrderedUnitary& u_right,
                                 const DenseOperator& h_left_diag,
                                 const DenseOperator& h_right_diag);

OrderedUnitary second_layer(const DenseOperator& h3);

TwoLayerUnitary build_network(const ChainSpec& spec, const WindowLayout& layout,
                              int dense_limit = default_dense_limit);

/// U_C = (U_left (x) U_right) * U_bridge on the window.
DenseOperator compose_window_unitary(const TwoLayerUnitary& net,
                                     int dense_limit = default_dense_limit);

/// tau = U_C sigma^z_site U_C^dagger for a site of the bridge (middle half).
DenseOperator tn_liom(const TwoLayerUnitary& net, int site,
                      int dense_limit = default_dense_limit);
DenseOperator tn_liom(const ChainSpec& spec, const WindowLayout& layout, int site,
                      int dense_limit = default_dense_limit);

}  // namespace liomnet
