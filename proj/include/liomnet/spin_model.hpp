#pragma once

// Pauli operators, XXZ Hamiltonians on site windows, and disorder sampling.
//
// Basis convention used everywhere in the library: for an operator supported on
// sites [first, last], site `first` is the most significant bit of the basis
// index. Bit value 0 is spin-up (sigma^z eigenvalue +1).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace liomnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Inclusive 1-based range of chain sites.
struct SiteRange {
  int first = 1;
  int last = 1;

  SiteRange() = default;
  SiteRange(int first_site, int last_site);

  int width() const { return last - first + 1; }
  std::size_t dimension() const { return std::size_t{1} << width(); }
  bool contains(int site) const { return site >= first && site <= last; }
  bool contains(const SiteRange& other) const {
    return other.first >= first && other.last <= last;
  }
  /// Shift of the basis-index bit that encodes `site`.
  int bit_of(int site) const { return last - site; }

  friend bool operator==(const SiteRange&, const SiteRange&) = default;
};

enum class PauliAxis { x, y, z };
enum class OperatorKind { hermitian, unitary, general };

struct ChainSpec {
  int n_sites = 0;
  double coupling_j = 1.0;
  double anisotropy_delta = 1.0;
  double disorder_w = 0.0;
  std::vector<double> fields;

  /// Throws ArgumentError when any invariant fails.
  void validate() const;
  SiteRange full_range() const { return {1, n_sites}; }
  double field(int site) const { return fields[static_cast<std::size_t>(site - 1)]; }
};

/// Builds and validates a spec whose length is taken from `fields`.
ChainSpec make_chain(double coupling_j, double anisotropy_delta, double disorder_w,
                     std::vector<double> fields);

/// Complex square matrix acting on a contiguous window of sites.
class DenseOperator {
 public:
  static constexpr double hermitian_tolerance = 1e-12;
  static constexpr double unitary_tolerance = 1e-10;

  /// Checks the dimension, and the Hermiticity bound when kind is hermitian.
  DenseOperator(SiteRange support, Matrix matrix, OperatorKind kind);

  const SiteRange& support() const { return support_; }
  const Matrix& matrix() const { return matrix_; }
  OperatorKind kind() const { return kind_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

  double hermiticity_defect() const;
  double unitarity_defect() const;

 private:
  SiteRange support_;
  Matrix matrix_;
  OperatorKind kind_;
};

/// Uniform fields on [-disorder_w, disorder_w], a pure function of (seed, realization).
std::vector<double> sample_fields(std::uint64_t seed, std::uint64_t realization, int n_sites,
                                  double disorder_w);

DenseOperator identity_operator(SiteRange support);
DenseOperator pauli(int site, PauliAxis axis, SiteRange support);

DenseOperator build_hamiltonian(const ChainSpec& spec, SiteRange support);
DenseOperator bond_term(const ChainSpec& spec, int left_site, SiteRange support);
DenseOperator field_term(const ChainSpec& spec, int site, SiteRange support);

/// Tensors identity factors around `op` so that it acts on `target`.
DenseOperator embed_operator(const DenseOperator& op, SiteRange target);

/// Closed form of Tr(H^2) for the full open chain.
double trace_h_squared(const ChainSpec& spec);

// Cheap Pauli actions on dense matrices, used where a full product is wasteful.
// `site_bit` is the bit shift of the site inside the matrix's basis index.
Matrix apply_pauli_left(PauliAxis axis, int site_bit, const Matrix& m);
Matrix apply_pauli_right(const Matrix& m, PauliAxis axis, int site_bit);

}  // namespace liomnet
