#include "liomnet/spin_model.hpp"

#include "liomnet/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace liomnet {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string range_text(SiteRange r) {
  std::ostringstream os;
  os << '[' << r.first << ',' << r.last << ']';
  return os.str();
}

void require_within_chain(const ChainSpec& spec, SiteRange support) {
  if (support.first < 1 || support.last > spec.n_sites) {
    throw ArgumentError("support " + range_text(support) + " outside chain of " +
                        std::to_string(spec.n_sites) + " sites");
  }
}

bool bit_set(std::size_t index, int bit) { return ((index >> bit) & 1U) != 0; }

double z_sign(std::size_t index, int bit) { return bit_set(index, bit) ? -1.0 : 1.0; }

// Diagonal and flip-hopping contributions of one bond, written in place.
void add_bond(Matrix& h, SiteRange support, int left_site, double j, double delta) {
  const int bl = support.bit_of(left_site);
  const int br = support.bit_of(left_site + 1);
  const std::size_t mask = (std::size_t{1} << bl) | (std::size_t{1} << br);
  const auto dim = static_cast<std::size_t>(h.rows());
  for (std::size_t v = 0; v < dim; ++v) {
    const bool parallel = bit_set(v, bl) == bit_set(v, br);
    h(v, v) += delta * (parallel ? 1.0 : -1.0);
    // sigma^x sigma^x + sigma^y sigma^y = 2 (sigma^+ sigma^- + h.c.)
    if (!parallel && j != 0.0) h(v ^ mask, v) += 2.0 * j;
  }
}

void add_field(Matrix& h, SiteRange support, int site, double field) {
  const int bit = support.bit_of(site);
  const auto dim = static_cast<std::size_t>(h.rows());
  for (std::size_t v = 0; v < dim; ++v) h(v, v) += field * z_sign(v, bit);
}

}  // namespace

SiteRange::SiteRange(int first_site, int last_site) : first(first_site), last(last_site) {
  if (first_site < 1 || last_site < first_site) {
    throw ArgumentError("invalid site range [" + std::to_string(first_site) + "," +
                        std::to_string(last_site) + "]");
  }
}

void ChainSpec::validate() const {
  if (n_sites < 2) throw ArgumentError("chain needs at least 2 sites");
  if (fields.size() != static_cast<std::size_t>(n_sites)) {
    throw ArgumentError("expected " + std::to_string(n_sites) + " fields, got " +
                        std::to_string(fields.size()));
  }
  if (!std::isfinite(coupling_j) || !std::isfinite(anisotropy_delta) ||
      !std::isfinite(disorder_w) || disorder_w < 0.0) {
    throw ArgumentError("couplings must be finite and disorder width nonnegative");
  }
  for (double h : fields) {
    if (!std::isfinite(h) || std::abs(h) > disorder_w) {
      throw ArgumentError("field value outside [-W, W]");
    }
  }
}

ChainSpec make_chain(double coupling_j, double anisotropy_delta, double disorder_w,
                     std::vector<double> fields) {
  ChainSpec spec;
  spec.n_sites = static_cast<int>(fields.size());
  spec.coupling_j = coupling_j;
  spec.anisotropy_delta = anisotropy_delta;
  spec.disorder_w = disorder_w;
  spec.fields = std::move(fields);
  spec.validate();
  return spec;
}

DenseOperator::DenseOperator(SiteRange support, Matrix matrix, OperatorKind kind)
    : support_(support), matrix_(std::move(matrix)), kind_(kind) {
  const auto dim = static_cast<Eigen::Index>(support_.dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw ArgumentError("operator on " + range_text(support_) + " must be " +
                        std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (kind_ == OperatorKind::hermitian && hermiticity_defect() >= hermitian_tolerance) {
    throw ContractError("operator tagged hermitian violates the Hermiticity bound");
  }
}

double DenseOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DenseOperator::unitarity_defect() const {
  const Matrix gram = matrix_.adjoint() * matrix_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::vector<double> sample_fields(std::uint64_t seed, std::uint64_t realization, int n_sites,
                                  double disorder_w) {
  if (n_sites < 2) throw ArgumentError("n_sites must be >= 2");
  if (!(disorder_w >= 0.0) || !std::isfinite(disorder_w)) {
    throw ArgumentError("disorder width must be finite and nonnegative");
  }
  std::vector<double> fields(static_cast<std::size_t>(n_sites), 0.0);
  if (disorder_w == 0.0) return fields;

  // One independent stream per (seed, realization); site k takes the k-th draw.
  std::seed_seq keys{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(realization),
                     static_cast<std::uint32_t>(realization >> 32)};
  std::mt19937_64 stream(keys);
  for (auto& h : fields) {
    // 53-bit mantissa draw; avoids implementation-defined distribution objects.
    const double u = static_cast<double>(stream() >> 11) * 0x1.0p-53;
    h = disorder_w * (2.0 * u - 1.0);
  }
  return fields;
}

DenseOperator identity_operator(SiteRange support) {
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  return DenseOperator(support, Matrix::Identity(dim, dim), OperatorKind::hermitian);
}

DenseOperator pauli(int site, PauliAxis axis, SiteRange support) {
  if (!support.contains(site)) {
    throw ArgumentError("site " + std::to_string(site) + " outside support " +
                        range_text(support));
  }
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  Matrix m = apply_pauli_left(axis, support.bit_of(site), Matrix::Identity(dim, dim));
  return DenseOperator(support, std::move(m), OperatorKind::hermitian);
}

DenseOperator build_hamiltonian(const ChainSpec& spec, SiteRange support) {
  require_within_chain(spec, support);
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  Matrix h = Matrix::Zero(dim, dim);
  for (int s = support.first; s < support.last; ++s) {
    add_bond(h, support, s, spec.coupling_j, spec.anisotropy_delta);
  }
  for (int s = support.first; s <= support.last; ++s) add_field(h, support, s, spec.field(s));
  return DenseOperator(support, std::move(h), OperatorKind::hermitian);
}

DenseOperator bond_term(const ChainSpec& spec, int left_site, SiteRange support) {
  require_within_chain(spec, support);
  if (!support.contains(left_site) || !support.contains(left_site + 1)) {
    throw ArgumentError("bond " + std::to_string(left_site) + "-" +
                        std::to_string(left_site + 1) + " not inside " + range_text(support));
  }
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  Matrix h = Matrix::Zero(dim, dim);
  add_bond(h, support, left_site, spec.coupling_j, spec.anisotropy_delta);
  return DenseOperator(support, std::move(h), OperatorKind::hermitian);
}

DenseOperator field_term(const ChainSpec& spec, int site, SiteRange support) {
  require_within_chain(spec, support);
  if (!support.contains(site)) {
    throw ArgumentError("site " + std::to_string(site) + " outside " + range_text(support));
  }
  const auto dim = static_cast<Eigen::Index>(support.dimension());
  Matrix h = Matrix::Zero(dim, dim);
  add_field(h, support, site, spec.field(site));
  return DenseOperator(support, std::move(h), OperatorKind::hermitian);
}

DenseOperator embed_operator(const DenseOperator& op, SiteRange target) {
  const SiteRange& src = op.support();
  if (!target.contains(src)) {
    throw ArgumentError("cannot embed " + range_text(src) + " into " + range_text(target));
  }
  if (src == target) return op;

  const std::size_t pre = std::size_t{1} << (src.first - target.first);
  const std::size_t post = std::size_t{1} << (target.last - src.last);
  const std::size_t inner = src.dimension();
  const auto dim = static_cast<Eigen::Index>(target.dimension());
  const Matrix& m = op.matrix();

  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t c = 0; c < inner; ++c) {
      for (std::size_t r = 0; r < inner; ++r) {
        const Complex value = m(r, c);
        if (value == Complex{}) continue;
        const std::size_t row0 = (p * inner + r) * post;
        const std::size_t col0 = (p * inner + c) * post;
        for (std::size_t q = 0; q < post; ++q) out(row0 + q, col0 + q) = value;
      }
    }
  }
  return DenseOperator(target, std::move(out), op.kind());
}

double trace_h_squared(const ChainSpec& spec) {
  spec.validate();
  double field_sum = 0.0;
  for (double h : spec.fields) field_sum += h * h;
  const double j = spec.coupling_j;
  const double d = spec.anisotropy_delta;
  const double bonds = static_cast<double>(spec.n_sites - 1);
  return std::ldexp(field_sum + bonds * (2.0 * j * j + d * d), spec.n_sites);
}

Matrix apply_pauli_left(PauliAxis axis, int site_bit, const Matrix& m) {
  const std::size_t mask = std::size_t{1} << site_bit;
  const auto rows = static_cast<std::size_t>(m.rows());
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < rows; ++r) {
    switch (axis) {
      case PauliAxis::x: out.row(r) = m.row(r ^ mask); break;
      case PauliAxis::y:
        out.row(r) = (bit_set(r, site_bit) ? kI : -kI) * m.row(r ^ mask);
        break;
      case PauliAxis::z: out.row(r) = z_sign(r, site_bit) * m.row(r); break;
    }
  }
  return out;
}

Matrix apply_pauli_right(const Matrix& m, PauliAxis axis, int site_bit) {
  const std::size_t mask = std::size_t{1} << site_bit;
  const auto cols = static_cast<std::size_t>(m.cols());
  Matrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < cols; ++c) {
    switch (axis) {
      case PauliAxis::x: out.col(c) = m.col(c ^ mask); break;
      case PauliAxis::y:
        out.col(c) = (bit_set(c, site_bit) ? -kI : kI) * m.col(c ^ mask);
        break;
      case PauliAxis::z: out.col(c) = z_sign(c, site_bit) * m.col(c); break;
    }
  }
  return out;
}

}  // namespace liomnet
