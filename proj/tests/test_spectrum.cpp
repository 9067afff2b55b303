#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "hypcomp/error.hpp"
#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"
#include "hypcomp/spectrum.hpp"
#include "oracles.hpp"

using namespace hypcomp;
using std::numbers::pi;

namespace {

CompressionMatrix section(double mu, std::size_t n) {
  const HyperbolicAutomorphism phi = make_canonical(mu);
  return truncated_matrix(phi, n, BoundaryGrid(recommended_grid_size(n, phi.map(), 8)));
}

double jacobi_sigma_max(const CompressionMatrix& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m.entries).singularValues()(0);
}

}  // namespace

TEST_CASE("compression matrix columns") {
  const double mu = 3.0;
  const CompressionMatrix m = section(mu, 64);
  CHECK(m.dimension() == 64u);
  CHECK(m.aliased.size() == 64u);
  CHECK(std::abs(m.entries(0, 0) - 1.0) < 1e-15);
  for (int k = 1; k < 64; ++k) CHECK(std::abs(m.entries(k, 0)) < 1e-15);

  const auto col1 = oracle::canonical_series(0.5, 64);
  for (int k = 0; k < 64; ++k) CHECK(std::abs(m.entries(k, 1) - col1[k]) < 1e-14);

  // Column k is the composition of z^k, truncated.
  const HyperbolicAutomorphism phi = make_canonical(mu);
  const BoundaryGrid grid(recommended_grid_size(64, phi.map(), 8));
  for (std::size_t k : {5u, 17u, 40u}) {
    const H2Function img = compose(H2Function::monomial(k, 64), phi.map(), grid);
    double worst = 0.0;
    for (int j = 0; j < 64; ++j) worst = std::max(worst, std::abs(m.entries(j, k) - img.coeff(j)));
    CHECK(worst < 1e-12);
  }

  const CompressionMatrix one = section(2.0, 1);
  CHECK(one.dimension() == 1u);
  CHECK(std::abs(one.entries(0, 0) - 1.0) < 1e-15);
  CHECK(operator_norm_estimate(one) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("resolved columns and aliasing flags") {
  const CompressionMatrix m = section(10.0, 256);
  CHECK(m.resolved_columns > 0u);
  CHECK(m.resolved_columns < 256u);
  CHECK_FALSE(m.aliased[0]);
  // Tight grid for a strong map: high powers wrap around.
  const HyperbolicAutomorphism phi = make_canonical(10.0);
  const CompressionMatrix tight = truncated_matrix(phi, 64, BoundaryGrid(256));
  CHECK(tight.aliased.back());
}

TEST_CASE("operator norm bounded by the square root of the multiplier") {
  for (double mu : {1.5, 2.0, 4.0, 10.0}) {
    double prev = 0.0;
    for (std::size_t n : {64u, 128u, 256u}) {
      const CompressionMatrix m = section(mu, n);
      const double s = operator_norm_estimate(m);
      CHECK(s <= std::sqrt(mu) * (1 + 1e-9));
      CHECK(s >= prev * (1 - 1e-12));
      CHECK(s == doctest::Approx(jacobi_sigma_max(m)).epsilon(1e-11));
      prev = s;
    }
  }
}

TEST_CASE("smallest singular value on resolved columns") {
  for (double mu : {1.5, 2.0, 4.0, 10.0}) {
    const CompressionMatrix m = section(mu, 256);
    const double s = smallest_singular_value(m);
    CHECK(s >= (1 - 1e-9) / std::sqrt(mu));
    CHECK(s <= 1.0 + 1e-12);
  }
  // Column counts past the dimension clamp to the full matrix.
  const CompressionMatrix small = section(2.0, 8);
  CHECK(smallest_singular_value(small, 9) == smallest_singular_value(small, 8));
}

TEST_CASE("compression errors") {
  const HyperbolicAutomorphism phi = make_canonical(2.0);
  try {
    truncated_matrix(phi, 64, BoundaryGrid(128));
    FAIL("undersized grid accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK_THROWS_AS(truncated_matrix(phi, 0, BoundaryGrid(64)), Error);
}

TEST_CASE("residual map examples") {
  const HyperbolicAutomorphism phi = make_canonical(4.0);
  const auto pts = annulus_residual_map(phi, {1.0, 1.3, 2.5, 2.0, 0.5, Complex(0, 0.4)});
  REQUIRE(pts.size() == 6u);

  CHECK(pts[0].status == SpectralStatus::Inside);
  CHECK(std::abs(pts[0].a) < 1e-15);
  CHECK(pts[0].residual < 1e-14);

  CHECK(pts[1].status == SpectralStatus::Inside);
  CHECK(pts[1].a.real() == doctest::Approx(std::log(1.3) / std::log(4.0)));
  CHECK(pts[1].a.real() == doctest::Approx(0.189).epsilon(0.01));
  CHECK(pts[1].residual <= 1e-6);
  CHECK(pts[1].gram_det >= 0.01);
  CHECK(pts[1].distance < 0.0);

  CHECK(pts[2].status == SpectralStatus::Outside);
  CHECK(std::isnan(pts[2].residual));
  CHECK(pts[2].distance > 0.0);
  CHECK(std::string(to_string(pts[2].status)) == "outside");

  CHECK(pts[3].status == SpectralStatus::Boundary);
  CHECK(pts[4].status == SpectralStatus::Boundary);
  CHECK(std::isnan(pts[3].residual));
  CHECK(pts[5].status == SpectralStatus::Outside);

  CHECK_THROWS_AS(annulus_residual_map(phi, {0.0}), Error);
}

TEST_CASE("residual field inside the annulus") {
  for (double mu : {2.0, 4.0}) {
    const HyperbolicAutomorphism phi = make_canonical(mu);
    const double lo = 1.05 / std::sqrt(mu), hi = 0.95 * std::sqrt(mu);
    std::vector<Complex> lambdas;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double r = lo * std::pow(hi / lo, (i + 0.5) / 4);
        lambdas.push_back(std::polar(r, 2 * pi * (j + 0.5) / 4));
      }
    }
    for (const auto& p : annulus_residual_map(phi, lambdas)) {
      CHECK(p.status == SpectralStatus::Inside);
      CHECK(p.residual <= 1e-5);
      CHECK(p.gram_det >= 0.01);
    }
  }
}

TEST_CASE("residual map for a transported map") {
  const MoebiusMap psi = conjugator(Complex(0, 1), Complex(0, -1));
  const HyperbolicAutomorphism phi = conjugate(make_canonical(2.0), psi);
  ResidualMapOptions o;
  o.budget = 2048;
  const auto pts = annulus_residual_map(phi, {std::polar(1.1, 0.5), std::polar(0.8, -2.0)}, o);
  for (const auto& p : pts) {
    CHECK(p.status == SpectralStatus::Inside);
    CHECK(p.residual <= 1e-5);
  }
}
