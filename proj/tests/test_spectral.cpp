#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "opexp/errors.hpp"
#include "opexp/expm.hpp"
#include "opexp/generators.hpp"
#include "opexp/rng.hpp"
#include "opexp/spectral.hpp"

using namespace opexp;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

// Smallest achievable max |x_i - y_p(i)| over all pairings (n <= 8).
double multiset_distance(std::vector<Complex> x, const std::vector<Complex>& y) {
  REQUIRE(x.size() == y.size());
  std::vector<std::size_t> p(y.size());
  std::iota(p.begin(), p.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[p[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::vector<Complex> eigen_oracle(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
  REQUIRE(solver.info() == Eigen::Success);
  std::vector<Complex> v(m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) v[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
  return v;
}

ComplexMatrix random_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

GeneratorConfig config(std::uint64_t seed, std::size_t dim, std::optional<SpectrumBox> box = std::nullopt) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.spectrum_box = box;
  return cfg;
}

void check_decomposition(const ComplexMatrix& t, const SpectralDecomposition& d) {
  const std::size_t n = t.dim();
  CHECK(relative_distance(ComplexMatrix::identity(n), mul(d.basis, adjoint(d.basis))) <= 1e-11);
  CHECK(relative_distance(t, d.reconstruct()) <= 1e-10);
}

const ComplexMatrix kExampleA{{0.0, kPi}, {-kPi, 0.0}};

}  // namespace

TEST_CASE("cartesian decomposition examples") {
  const ComplexMatrix h{{2.0, Complex(1.0, -1.0)}, {Complex(1.0, 1.0), -1.0}};
  const CartesianPair ph = cartesian(h);
  CHECK(ph.real_part == h);
  CHECK(frobenius_norm(ph.imag_part) == 0.0);

  const CartesianPair pih = cartesian(scale(h, kI));
  CHECK(frobenius_norm(pih.real_part) == 0.0);
  CHECK(relative_distance(h, pih.imag_part) <= 1e-16);

  const CartesianPair pa = cartesian(kExampleA);
  CHECK(frobenius_norm(pa.real_part) == 0.0);
  const ComplexMatrix expected{{0.0, Complex(0.0, -kPi)}, {Complex(0.0, kPi), 0.0}};
  CHECK(pa.imag_part == expected);

  Rng rng(5, 0);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix t = random_matrix(rng, 1 + k % 5);
    const CartesianPair p = cartesian(t);
    CHECK(hermitian_residual(p.real_part) == 0.0);
    CHECK(hermitian_residual(p.imag_part) == 0.0);
    CHECK(relative_distance(t, add(p.real_part, scale(p.imag_part, kI))) <= 1e-15);
  }
}

TEST_CASE("is_normal examples and cartesian cross-check") {
  CHECK(is_normal(random_unitary(config(1, 4)), 1e-10));
  CHECK_FALSE(is_normal(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-10));
  CHECK(is_normal(kExampleA, 1e-10));
  Rng rng(6, 0);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix t = k % 2 == 0 ? random_matrix(rng, 3) : random_normal_constrained(config(k, 3, SpectrumBox{-1, 1, -1, 1}));
    const CartesianPair p = cartesian(t);
    CHECK(is_normal(t, 1e-10) == (comm_residual(p.real_part, p.imag_part) <= 1e-10));
  }
}

TEST_CASE("eig_hermitian examples") {
  const auto d1 = eig_hermitian(ComplexMatrix::diagonal(std::vector<Complex>{3.0, 1.0, 2.0}));
  CHECK(d1.eigenvalues == std::vector<Complex>{1.0, 2.0, 3.0});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK((std::abs(d1.basis(i, j)) == 0.0 || std::abs(d1.basis(i, j)) == 1.0));

  const auto d2 = eig_hermitian(cartesian(kExampleA).imag_part);
  CHECK(d2.eigenvalues[0].real() == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(d2.eigenvalues[1].real() == doctest::Approx(kPi).epsilon(1e-15));

  const ComplexMatrix two_one{{2.0, 1.0}, {1.0, 2.0}};
  const auto d3 = eig_hermitian(two_one);
  CHECK(d3.eigenvalues[0].real() == doctest::Approx(1.0));
  CHECK(d3.eigenvalues[1].real() == doctest::Approx(3.0));
  check_decomposition(two_one, d3);

  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
}

TEST_CASE("eig_hermitian agrees with an independent solver") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 12;
    const ComplexMatrix h = random_hermitian(config(seed, n, SpectrumBox{-5, 5, 0, 0}));
    const SpectralDecomposition d = eig_hermitian(h);
    check_decomposition(h, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(d.eigenvalues[k].imag() == 0.0);
      CHECK(std::abs(d.eigenvalues[k].real() - oracle.eigenvalues()(static_cast<Eigen::Index>(k))) <= 1e-12 * 10.0);
      if (k > 0) CHECK(d.eigenvalues[k - 1].real() <= d.eigenvalues[k].real());
    }
  }
}

TEST_CASE("eig_hermitian on clustered and larger spectra") {
  // Repeated eigenvalues and a 64x64 matrix.
  const ComplexMatrix u = random_unitary(config(9, 6));
  const std::vector<Complex> values{1.0, 1.0, 1.0, -2.0, -2.0, 5.0};
  const ComplexMatrix h = hermitian_part(conjugate_diagonal(u, values));
  const auto d = eig_hermitian(h);
  check_decomposition(h, d);
  CHECK(multiset_distance(d.eigenvalues, values) <= 1e-12);

  const ComplexMatrix big = random_hermitian(config(10, 64, SpectrumBox{-1, 1, 0, 0}));
  check_decomposition(big, eig_hermitian(big));
}

TEST_CASE("eig_normal examples") {
  const auto d1 = eig_normal(ComplexMatrix::diagonal(std::vector<Complex>{Complex(1.0, 1.0), 2.0}));
  CHECK(d1.eigenvalues == std::vector<Complex>{Complex(1.0, 1.0), 2.0});

  const auto d2 = eig_normal(kExampleA);
  CHECK(std::abs(d2.eigenvalues[0] - Complex(0.0, -kPi)) <= 1e-14);
  CHECK(std::abs(d2.eigenvalues[1] - Complex(0.0, kPi)) <= 1e-14);
  check_decomposition(kExampleA, d2);

  const ComplexMatrix rot{{0.0, 1.0}, {-1.0, 0.0}};
  const auto d3 = eig_normal(rot);
  CHECK(std::abs(d3.eigenvalues[0] - Complex(0.0, -1.0)) <= 1e-15);
  CHECK(std::abs(d3.eigenvalues[1] - Complex(0.0, 1.0)) <= 1e-15);

  CHECK_THROWS_AS(eig_normal(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotNormal);
}

TEST_CASE("eig_normal agrees with an independent solver") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const ComplexMatrix m = random_normal_constrained(config(seed, n, SpectrumBox{-2, 2, -2, 2}));
    const SpectralDecomposition d = eig_normal(m);
    check_decomposition(m, d);
    CHECK(multiset_distance(d.eigenvalues, eigen_oracle(m)) <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) {
      const Complex a = d.eigenvalues[k - 1], b = d.eigenvalues[k];
      CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
    }
  }
}

TEST_CASE("eig_normal with degenerate real parts") {
  // Equal real parts, distinct imaginary parts, plus an exactly repeated eigenvalue.
  const std::vector<Complex> values{Complex(0.5, 1.0), Complex(0.5, 2.0), Complex(0.5, 2.0), Complex(-1.0, 0.3),
                                    Complex(0.5 + 1e-10, 0.7)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix n = conjugate_diagonal(random_unitary(config(seed, 5)), values);
    const auto d = eig_normal(n);
    check_decomposition(n, d);
    CHECK(multiset_distance(d.eigenvalues, values) <= 1e-9);
  }
}

TEST_CASE("spectral invariants") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const ComplexMatrix m = random_normal_constrained(config(seed, n, SpectrumBox{-1.5, 1.5, -3, 3}));
    const auto d = eig_normal(m);

    // spectral mapping
    std::vector<Complex> mapped;
    for (const Complex& z : d.eigenvalues) mapped.push_back(std::exp(z));
    CHECK(multiset_distance(mapped, eig_normal(expm(m).value).eigenvalues) <= 1e-9);

    // trace equals eigenvalue sum
    const Complex sum = std::accumulate(d.eigenvalues.begin(), d.eigenvalues.end(), Complex{});
    CHECK(std::abs(sum - trace(m)) <= 1e-10 * std::max(1.0, std::abs(trace(m))));

    // unitary-conjugation equivariance
    const ComplexMatrix u = random_unitary(config(seed + 100, n));
    CHECK(multiset_distance(eig_normal(mul(mul(u, m), adjoint(u))).eigenvalues, d.eigenvalues) <= 1e-10);

    // Hermitian: both solvers agree
    const ComplexMatrix h = random_hermitian(config(seed, n, SpectrumBox{-3, 3, 0, 0}));
    CHECK(multiset_distance(eig_hermitian(h).eigenvalues, eig_normal(h).eigenvalues) <= 1e-10);
  }
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(ComplexMatrix(3)) == 0.0);
  CHECK(spectral_radius(kExampleA) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(spectral_radius(ComplexMatrix::diagonal(std::vector<Complex>{-3.0, 2.0})) == 3.0);
  CHECK_THROWS_AS(spectral_radius(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotNormal);
  // Operator norm of a normal matrix equals its spectral radius.
  const ComplexMatrix m = random_normal_constrained(config(4, 5, SpectrumBox{-2, 2, -2, 2}));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  CHECK(spectral_radius(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
}

TEST_CASE("interval certificates") {
  const ComplexMatrix half_pi = scale(ComplexMatrix::identity(3), kPi / 2.0);
  CHECK(certify_interval(half_pi, 0.0, kPi).holds);
  const auto cert_a = certify_interval(cartesian(kExampleA).imag_part, 0.0, kPi);
  CHECK_FALSE(cert_a.holds);
  CHECK(cert_a.violation() > 0.0);
  CHECK(certify_interval(ComplexMatrix(2), -kPi / 2.0, kPi / 2.0).holds);
  CHECK(certify_interval(ComplexMatrix::identity(2), 0.0, 2.0).holds);
  CHECK(default_margin(ComplexMatrix(2)) == 1e-8);
  CHECK(default_margin(scale(ComplexMatrix::identity(4), 10.0)) == doctest::Approx(2e-7));

  // Eigenvalue exactly at lo: only the margin makes the containment strict.
  CHECK(certify_interval(ComplexMatrix(1), 0.0, 1.0, 0.0).holds);
  CHECK_FALSE(certify_interval(ComplexMatrix(1), 0.0, 1.0).holds);

  // Monotone in the interval.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ComplexMatrix h = random_hermitian(config(seed, 4, SpectrumBox{-1, 1, 0, 0}));
    Rng rng(seed, 9);
    const double lo = rng.uniform(-1.5, 0.0), hi = rng.uniform(0.0, 1.5);
    const auto small = certify_interval(h, lo, hi, 0.0);
    const auto large = certify_interval(h, lo - rng.uniform(), hi + rng.uniform(), 0.0);
    if (small.holds) CHECK(large.holds);
    CHECK(small.holds == (small.min_eig >= small.lo && small.max_eig <= small.hi));
  }
  CHECK_THROWS_AS(certify_interval(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0, 1.0), NotHermitian);
}
