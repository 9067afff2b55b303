#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypcomp/boundary.hpp"
#include "hypcomp/error.hpp"
#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"
#include "oracles.hpp"

using namespace hypcomp;
using std::numbers::pi;

namespace {

std::vector<Complex> base_samples(const OrbitGrid& grid, const BoundaryProfile& f) {
  std::vector<Complex> out(grid.base_size());
  for (int b = 0; b < 2; ++b) {
    for (long j = -grid.base_extent(); j <= grid.base_extent(); ++j) {
      out[grid.base_offset(b, j)] = f(grid.node(b, j));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("orbit grid geometry") {
  const HyperbolicAutomorphism phi = make_canonical(2.0);
  const OrbitGrid grid(phi, 20);
  CHECK(grid.period() == 8);
  CHECK(grid.step() == doctest::Approx(std::log(2.0) / 8));
  CHECK(grid.full_extent() >= grid.base_extent() + 21 * grid.period());

  double total = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (long j = -grid.base_extent(); j <= grid.base_extent(); ++j) {
      CHECK(std::abs(std::abs(grid.node(b, j).z) - 1.0) < 1e-14);
      total += grid.weight(b, j);
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phi shifts orbit grid nodes by one period") {
  for (double mu : {1.5, 2.0, 4.0}) {
    const HyperbolicAutomorphism phi = make_canonical(mu);
    const OrbitGrid grid(phi, 10);
    for (int b = 0; b < 2; ++b) {
      for (long j = -40; j <= 40; j += 7) {
        const Complex image = phi(grid.node(b, j).z);
        CHECK(std::abs(image - grid.node(b, j + grid.period()).z) < 1e-13);
      }
    }
  }
}

TEST_CASE("transported grid follows the conjugated map") {
  const MoebiusMap psi = conjugator(Complex(0, 1), Complex(0, -1));
  const HyperbolicAutomorphism phi = conjugate(make_canonical(2.0), psi);
  const OrbitGrid grid(phi, 10);
  for (int b = 0; b < 2; ++b) {
    for (long j = -30; j <= 30; j += 5) {
      const CirclePoint p = grid.node(b, j);
      CHECK(std::abs(phi(p.z) - grid.node(b, j + grid.period()).z) < 1e-12);
      CHECK(std::abs(p.from_alpha - (p.z - p.alpha)) < 1e-12);
      CHECK(std::abs(p.alpha - Complex(0, 1)) < 1e-12);
    }
  }
}

TEST_CASE("offsets stay accurate next to the fixed points") {
  const HyperbolicAutomorphism phi = make_canonical(2.0);
  const OrbitGrid grid(phi, 40);
  // Deep nodes lie within far less than machine epsilon of +1 or -1.
  const CirclePoint p = grid.node(0, grid.full_extent());
  CHECK(std::abs(p.from_alpha) > 0.0);
  CHECK(std::abs(p.from_alpha) < 1e-20);
  const CirclePoint q = grid.node(0, -grid.full_extent());
  CHECK(std::abs(q.from_beta) > 0.0);
  CHECK(std::abs(q.from_beta) < 1e-20);
}

TEST_CASE("orbit grid quadrature of analytic functions") {
  const OrbitGrid grid(make_canonical(2.0), 20);
  const auto norm_of = [&](const BoundaryProfile& f) {
    const auto s = base_samples(grid, f);
    return grid.norm_squared(s);
  };
  CHECK(norm_of(BoundaryProfile::constant(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm_of(BoundaryProfile::constant(Complex(0, 2))) == doctest::Approx(4.0).epsilon(1e-12));
  for (std::size_t k : {1u, 3u, 10u}) {
    CHECK(norm_of(BoundaryProfile::taylor(H2Function::monomial(k, 16))) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  for (double g : {0.25, 0.75, 1.25}) {
    CHECK(norm_of(BoundaryProfile::weight({g, 0.0})) ==
          doctest::Approx(oracle::weight_norm_sq(g)).epsilon(1e-10));
  }
  // (1 - z)(1 + z) has norm^2 2.
  CHECK(norm_of(BoundaryProfile::weight({1.0, 1.0})) == doctest::Approx(2.0).epsilon(1e-10));
  const auto s = base_samples(grid, BoundaryProfile::weight({0.75, 0.75}));
  CHECK(std::abs(grid.norm_squared(s) - grid.norm_squared(s, 2)) < 1e-10);
  CHECK_THROWS_AS(grid.norm_squared(std::vector<Complex>(3)), Error);
}

TEST_CASE("profiles agree with their Taylor expansions") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-pi, pi);
  const WeightSpec w{0.75, 0.5};
  const BoundaryProfile f = BoundaryProfile::weight(w);
  const H2Function t = *f.to_taylor(1 << 14);
  for (int k = 0; k < 20; ++k) {
    // Points in the disc where truncation is negligible.
    const Complex z = 0.7 * std::polar(1.0, u(rng));
    const CirclePoint p = CirclePoint::generic(z, 1.0, -1.0);
    CHECK(std::abs(f(p) - t(z)) < 1e-12);
    CHECK(std::abs(f(p) - std::pow(1.0 - z, 0.75) * std::pow(1.0 + z, 0.5)) < 1e-13);
  }
  const std::vector<Complex> poly{1.0, Complex(0, 2), -0.5};
  const H2Function g = H2Function::polynomial(poly, 8);
  const BoundaryProfile h = BoundaryProfile::weighted(w, g);
  const Complex z(0.2, 0.6);
  CHECK(std::abs(h(CirclePoint::generic(z, 1.0, -1.0)) -
                 std::pow(1.0 - z, 0.75) * std::pow(1.0 + z, 0.5) * oracle::horner(poly, z)) < 1e-13);
  CHECK(BoundaryProfile::constant(2.0).label() == "constant");
  CHECK(f.label().find("weight") != std::string::npos);
}

TEST_CASE("weights at relocated fixed points") {
  const Complex a(0, 1), b(0, -1);
  const BoundaryProfile f = BoundaryProfile::weight({0.5, 0.5, a, b});
  const Complex z = std::polar(1.0, 0.4);
  const Complex expect = std::pow(1.0 - std::conj(a) * z, 0.5) * std::pow(1.0 - std::conj(b) * z, 0.5);
  CHECK(std::abs(f(CirclePoint::generic(z, a, b)) - expect) < 1e-14);
  CHECK(std::abs(f(CirclePoint::generic(a, a, b))) == 0.0);
  CHECK_THROWS_AS(BoundaryProfile::weight({0.5, 0.5, Complex(0.5, 0), b}), Error);
}

TEST_CASE("orbit grid errors") {
  const HyperbolicAutomorphism phi = make_canonical(2.0);
  CHECK_THROWS_AS(OrbitGrid(phi, 0), Error);
  CHECK_THROWS_AS(OrbitGrid(phi, 10, {7, 40.0}), Error);
  CHECK_THROWS_AS(OrbitGrid(phi, 10, {8, 0.0}), Error);
  try {
    OrbitGrid(make_canonical(1.01), 100000);
    FAIL("oversized window accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}
