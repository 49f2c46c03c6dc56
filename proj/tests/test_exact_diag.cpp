#include "liomnet/entanglement.hpp"
#include "liomnet/errors.hpp"
#include "liomnet/exact_diag.hpp"
#include "liomnet/liom_metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace liomnet;

namespace {

DenseOperator hermitian(const Matrix& m) {
  return DenseOperator(SiteRange(1, static_cast<int>(std::log2(m.rows()))), m,
                       OperatorKind::hermitian);
}

RawEigensystem raw_from(const Matrix& vectors) {
  RawEigensystem raw;
  raw.support = SiteRange(1, static_cast<int>(std::log2(vectors.rows())));
  raw.values = RealVector::LinSpaced(vectors.cols(), 0.0, 1.0);
  raw.vectors = vectors;
  return raw;
}

}  // namespace

TEST_SUITE("exact_diag") {
  TEST_CASE("eig_hermitian: diag(3,1)") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    const RawEigensystem raw = eig_hermitian(hermitian(m));
    CHECK(raw.values(0) == doctest::Approx(1.0));
    CHECK(raw.values(1) == doctest::Approx(3.0));
    CHECK(std::abs(raw.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(raw.vectors(0, 1)) == doctest::Approx(1.0));
  }

  TEST_CASE("eig_hermitian: sigma x") {
    const RawEigensystem raw = eig_hermitian(hermitian(oracle::sigma('x')));
    CHECK(raw.values(0) == doctest::Approx(-1.0));
    CHECK(raw.values(1) == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(raw.vectors(0, 0)) == doctest::Approx(r));
    CHECK(std::abs(raw.vectors(0, 0) + raw.vectors(1, 0)) < 1e-12);
    CHECK(std::abs(raw.vectors(0, 1) - raw.vectors(1, 1)) < 1e-12);
  }

  TEST_CASE("eig_hermitian: reconstruction of a random 64-dim matrix") {
    std::mt19937_64 rng(2);
    const Matrix m = oracle::random_hermitian(64, rng);
    const RawEigensystem raw = eig_hermitian(hermitian(m));
    const Matrix v = raw.vectors;
    CHECK(oracle::max_abs(v.adjoint() * v - oracle::eye(64)) < 1e-10);
    const Matrix rebuilt = v * raw.values.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(oracle::max_abs(rebuilt - m) < 1e-9 * oracle::max_abs(m));
    for (Eigen::Index k = 1; k < 64; ++k) CHECK(raw.values(k) >= raw.values(k - 1));
  }

  TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_hermitian(DenseOperator({1, 1}, m, OperatorKind::general)), ContractError);
  }

  TEST_CASE("order_eigenstates: identity") {
    const OrderedUnitary u = order_eigenstates(raw_from(oracle::eye(4)));
    CHECK(oracle::max_abs(u.matrix - oracle::eye(4)) == 0.0);
    CHECK(u.permutation == std::vector<std::size_t>{0, 1, 2, 3});
  }

  TEST_CASE("order_eigenstates: permutation matrix with phases") {
    Matrix p = Matrix::Zero(4, 4);
    p(2, 0) = Complex(0.0, 1.0);
    p(0, 1) = -1.0;
    p(3, 2) = 1.0;
    p(1, 3) = Complex(0.0, -1.0);
    const OrderedUnitary u = order_eigenstates(raw_from(p));
    CHECK(oracle::max_abs(u.matrix - oracle::eye(4)) < 1e-15);
    CHECK(u.permutation == std::vector<std::size_t>{2, 0, 3, 1});
    CHECK(u.energies(2) == doctest::Approx(0.0));
    CHECK(u.energies(0) == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("order_eigenstates: 30 degree rotation keeps identity permutation") {
    const double c = std::cos(M_PI / 6.0), s = std::sin(M_PI / 6.0);
    Matrix r(2, 2);
    r << c, -s, s, c;
    const OrderedUnitary u = order_eigenstates(raw_from(r));
    CHECK(u.permutation == std::vector<std::size_t>{0, 1});
    CHECK(u.matrix(0, 0).real() == doctest::Approx(c));
    CHECK(u.matrix(1, 1).real() == doctest::Approx(c));
    CHECK(u.matrix(0, 1).real() == doctest::Approx(-s));
  }

  TEST_CASE("order_eigenstates: conflicting peaks resolved greedily") {
    // Both columns peak on basis 0; the larger peak wins it.
    Matrix v(2, 2);
    const double a = std::sqrt(0.8), b = std::sqrt(0.2);
    const double c = std::sqrt(0.7), d = std::sqrt(0.3);
    v << c, a, d, -b;
    RawEigensystem raw = raw_from(v);
    const OrderedUnitary u = order_eigenstates(raw);
    CHECK(u.permutation == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("order_eigenstates is invariant under column permutations") {
    std::mt19937_64 rng(17);
    const ChainSpec spec = make_chain(1.0, 1.0, 4.0, oracle::uniform_fields(4, 4.0, rng));
    const RawEigensystem raw = eig_hermitian(build_hamiltonian(spec, spec.full_range()));
    const OrderedUnitary ref = order_eigenstates(raw);
    std::vector<Eigen::Index> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      RawEigensystem shuffled = raw;
      for (Eigen::Index k = 0; k < 16; ++k) {
        shuffled.vectors.col(k) = raw.vectors.col(perm[static_cast<std::size_t>(k)]);
        shuffled.values(k) = raw.values(perm[static_cast<std::size_t>(k)]);
      }
      const OrderedUnitary u = order_eigenstates(shuffled);
      CHECK(oracle::max_abs(u.matrix - ref.matrix) < 1e-15);
      CHECK(oracle::max_abs((u.energies - ref.energies).cast<Complex>()) < 1e-15);
    }
  }

  TEST_CASE("ordered unitaries are unitary and gauge-fixed") {
    std::mt19937_64 rng(8);
    for (int n = 2; n <= 7; ++n) {
      const ChainSpec spec = make_chain(1.0, 1.0, 6.0, oracle::uniform_fields(n, 6.0, rng));
      const OrderedUnitary u = diagonalize_ordered(build_hamiltonian(spec, spec.full_range()));
      CHECK(u.as_operator().unitarity_defect() < 1e-10);
      std::vector<std::size_t> sorted = u.permutation;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k) CHECK(sorted[k] == k);
      for (Eigen::Index j = 0; j < u.matrix.cols(); ++j) {
        CHECK(u.matrix(j, j).real() >= 0.0);
        CHECK(u.matrix(j, j).imag() == 0.0);
      }
      const Matrix h = oracle::xxz(1.0, 1.0, spec.fields);
      const Matrix d = u.matrix.adjoint() * h * u.matrix;
      CHECK(oracle::max_abs(d.diagonal().real() - u.energies) < 1e-10);
    }
  }

  TEST_CASE("exact_liom: J=0 gives the bare spin") {
    const ChainSpec spec = make_chain(0.0, 0.8, 5.0, {1.0, -3.0, 2.5, 0.4});
    for (int site = 1; site <= 4; ++site)
      CHECK(oracle::max_abs(exact_liom(spec, site).matrix() -
                            oracle::at_site(oracle::sigma('z'), site, 4)) == 0.0);
  }

  TEST_CASE("exact_liom: spectrum is +-1 with equal multiplicity") {
    std::mt19937_64 rng(12);
    const ChainSpec spec = make_chain(1.0, 1.0, 3.0, oracle::uniform_fields(5, 3.0, rng));
    const RawEigensystem raw = eig_hermitian(exact_liom(spec, 3));
    for (Eigen::Index k = 0; k < 16; ++k) CHECK(raw.values(k) == doctest::Approx(-1.0));
    for (Eigen::Index k = 16; k < 32; ++k) CHECK(raw.values(k) == doctest::Approx(1.0));
  }

  TEST_CASE("exact_liom: N=5 W=10 commutator below the bare-spin value") {
    const ChainSpec spec = make_chain(1.0, 1.0, 10.0, sample_fields(1, 0, 5, 10.0));
    const DenseOperator tau = exact_liom(spec, 3);
    const DenseOperator h = build_hamiltonian(spec, spec.full_range());
    CHECK(merit_commutator(tau, h) < 8.0);
    CHECK(merit_commutator(pauli(3, PauliAxis::z, spec.full_range()), h) ==
          doctest::Approx(8.0));
  }

  TEST_CASE("exact LIOM suite") {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 8; ++n) {
      const ChainSpec spec = make_chain(1.0, 1.0, 8.0, oracle::uniform_fields(n, 8.0, rng));
      const DenseOperator h = build_hamiltonian(spec, spec.full_range());
      std::vector<Matrix> taus;
      for (int site = 1; site <= n; ++site) {
        const DenseOperator tau = exact_liom(spec, site);
        const Matrix& t = tau.matrix();
        CHECK(oracle::max_abs(t * t - oracle::eye(t.rows())) < 1e-9);
        CHECK(std::abs(t.trace()) < 1e-9);
        CHECK(merit(tau, h) < 1e-18);
        taus.push_back(t);
      }
      for (std::size_t a = 0; a < taus.size(); ++a)
        for (std::size_t b = a + 1; b < taus.size(); ++b)
          CHECK(oracle::max_abs(taus[a] * taus[b] - taus[b] * taus[a]) < 1e-9);
    }
  }

  TEST_CASE("exact_liom capacity limit") {
    const ChainSpec spec = make_chain(1.0, 1.0, 1.0, std::vector<double>(6, 0.1));
    CHECK_THROWS_AS(exact_liom(spec, 1, 5), CapacityError);
    CHECK_NOTHROW(exact_liom(spec, 1, 6));
  }

  TEST_CASE("exact_entropy_trace examples") {
    const std::vector<double> times{0.0, 0.5, 3.0, 50.0, 1e4};
    std::mt19937_64 rng(41);
    const ChainSpec spec = make_chain(1.0, 1.0, 5.0, oracle::uniform_fields(8, 5.0, rng));
    const auto s = exact_entropy_trace(spec, 4, times);
    CHECK(std::abs(s[0]) < 1e-12);
    for (double v : s) {
      CHECK(v >= -1e-12);
      CHECK(v <= 4.0 * std::log(2.0) + 1e-12);
    }
    CHECK(s[3] > 1e-3);
    const ChainSpec diag = make_chain(0.0, 0.9, 5.0, oracle::uniform_fields(6, 5.0, rng));
    for (double v : exact_entropy_trace(diag, 3, times)) CHECK(std::abs(v) < 1e-12);
  }

  TEST_CASE("exact quench matches a literal matrix exponential oracle") {
    std::mt19937_64 rng(43);
    const ChainSpec spec = make_chain(1.0, 0.5, 2.0, oracle::uniform_fields(4, 2.0, rng));
    const Vector psi0 = neel_state(4);
    const ExactQuench quench(spec, psi0);
    const Matrix h = oracle::xxz(1.0, 0.5, spec.fields);
    // Taylor series with many small steps.
    const double t = 0.7;
    const int steps = 700;
    Vector psi = psi0;
    const Matrix step = -Complex(0.0, t / steps) * h;
    for (int k = 0; k < steps; ++k) {
      Vector term = psi, acc = psi;
      for (int order = 1; order < 12; ++order) {
        term = step * term / static_cast<double>(order);
        acc += term;
      }
      psi = acc;
    }
    CHECK((quench.state_at(t) - psi).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("exact entropy is independent of the initial global phase") {
    std::mt19937_64 rng(44);
    const ChainSpec spec = make_chain(1.0, 1.0, 3.0, oracle::uniform_fields(6, 3.0, rng));
    const Vector psi0 = neel_state(6);
    const ExactQuench a(spec, psi0);
    const ExactQuench b(spec, std::polar(1.0, 0.9) * psi0);
    for (double t : {0.3, 4.0, 90.0}) CHECK(a.entropy_at(t, 3) == doctest::Approx(b.entropy_at(t, 3)).epsilon(1e-12));
  }
}
