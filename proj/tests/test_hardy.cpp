#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"
#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"
#include "oracles.hpp"

using namespace hypcomp;
using std::numbers::pi;

namespace {

std::vector<Complex> random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = Complex(g(rng), g(rng));
  return c;
}

HyperbolicAutomorphism random_hyperbolic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double mu = 1.5 + 2.5 * u(rng);
  const Complex a = std::polar(0.5 * u(rng), 2 * pi * u(rng));
  const Complex rot = std::polar(1.0, 2 * pi * u(rng));
  return conjugate(make_canonical(mu), MoebiusMap(rot, -rot * a, -std::conj(a), 1.0));
}

// Budget large enough that a degree-d polynomial composed with m has no
// coefficient mass beyond it: k^d s^k negligible with s = |m(0)|-driven decay.
std::size_t budget_for(int degree, const MoebiusMap& m) {
  const double s = std::abs(m.at(0.0));
  std::size_t n = 128;
  while (degree * std::log(static_cast<double>(n)) + n * std::log(std::max(s, 0.05)) > -60.0) n *= 2;
  return n;
}

double max_abs_diff(const H2Function& f, const H2Function& g) {
  double d = 0.0;
  for (std::size_t k = 0; k < std::max(f.budget(), g.budget()); ++k) {
    d = std::max(d, std::abs(f.coeff(k) - g.coeff(k)));
  }
  return d;
}

}  // namespace

TEST_CASE("weight function coefficients") {
  const H2Function one = weight_function({0.0, 0.0}, 16);
  CHECK(one.coeff(0) == Complex(1.0));
  CHECK(norm(one) == 1.0);

  const H2Function w11 = weight_function({1.0, 1.0}, 16);
  CHECK(std::abs(w11.coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(w11.coeff(1)) < 1e-15);
  CHECK(std::abs(w11.coeff(2) + 1.0) < 1e-15);
  for (std::size_t k = 3; k < 16; ++k) CHECK(std::abs(w11.coeff(k)) < 1e-15);
  CHECK(std::abs(norm(w11) - std::sqrt(2.0)) < 1e-15);

  // sqrt(1 - z^2): the binomial series of (1 - u)^{1/2} at u = z^2.
  const H2Function w = weight_function({0.5, 0.5}, 1024);
  const auto b = oracle::binomial_series(0.5, 512);
  CHECK(std::abs(w.coeff(2) + 0.5) < 1e-15);
  CHECK(std::abs(w.coeff(4) + 0.125) < 1e-15);
  CHECK(std::abs(w.coeff(6) + 0.0625) < 1e-15);
  double worst = 0.0;
  for (std::size_t k = 0; k < 512; ++k) {
    worst = std::max(worst, std::abs(w.coeff(2 * k) - b[k]));
    worst = std::max(worst, std::abs(w.coeff(2 * k + 1)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("weight function norm and boundary modulus") {
  for (double g : {0.25, 0.5, 0.75, 1.25}) {
    const H2Function w = weight_function({g, 0.0}, 1 << 16);
    CHECK(std::abs(w.norm_squared() + w.tail_energy() - oracle::weight_norm_sq(g)) <
          1e-4 * oracle::weight_norm_sq(g));
  }
  const H2Function w = weight_function({0.75, 0.25}, 256);
  for (double t : {0.5, 1.5, 2.5}) {
    const Complex z = 0.5 * std::polar(1.0, t);
    CHECK(std::abs(w(z) - std::pow(1.0 - z, 0.75) * std::pow(1.0 + z, 0.25)) < 1e-13);
  }
}

TEST_CASE("weight function errors") {
  CHECK_THROWS_AS(weight_function({0.5, 0.5}, 100), Error);
  try {
    weight_function({0.5, 0.5}, 100);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK_THROWS_AS(weight_function({-0.1, 0.5}, 64), Error);
  CHECK_THROWS_AS(weight_function({1.6, 0.5}, 64), Error);
}

TEST_CASE("explicit eigenfunction series") {
  const H2Function f0 = eigenfunction_fa(0.0, 64);
  CHECK(f0.coeff(0) == Complex(1.0));
  for (std::size_t k = 1; k < 64; ++k) CHECK(f0.coeff(k) == Complex{});

  for (Complex a : {Complex(0.2, 0.0), Complex(-0.3, 1.7), Complex(0.1, -4.0)}) {
    const H2Function f = eigenfunction_fa(a, 256);
    CHECK(std::abs(f.coeff(0) - 1.0) < 1e-15);
    CHECK(std::abs(f.coeff(1) - 2.0 * a) < 1e-14);
    // c_2 = 2 a^2 from exp(2a z + ...).
    CHECK(std::abs(f.coeff(2) - 2.0 * a * a) < 1e-13);
    const Complex z(0.3, 0.2);
    CHECK(std::abs(f(z) - oracle::fa(a, z)) < 1e-12 * std::abs(oracle::fa(a, z)));
  }

  // Coefficients decay like k^{Re a - 1}; the tail shrinks with Re a.
  const H2Function slow = eigenfunction_fa(0.49, 4096);
  const H2Function fast = eigenfunction_fa(-0.3, 4096);
  CHECK_FALSE(slow.is_resolved());
  CHECK(slow.tail_energy() / slow.norm_squared() > 100 * fast.tail_energy() / fast.norm_squared());

  for (Complex a : {Complex(0.5, 0.0), Complex(-0.5, 1.0), Complex(0.7, 0.0)}) {
    try {
      eigenfunction_fa(a, 64);
      FAIL("accepted a function outside H2");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInH2);
    }
  }
}

TEST_CASE("composition examples") {
  const BoundaryGrid grid(1024);
  for (double mu : {1.5, 3.0, 9.0}) {
    const HyperbolicAutomorphism phi = make_canonical(mu);
    const double r = phi(0.0).real();
    const H2Function z = H2Function::monomial(1, 128);
    const H2Function img = compose(z, phi.map(), BoundaryGrid(recommended_grid_size(128, phi.map())));
    const auto expect = oracle::canonical_series(r, 128);
    double worst = 0.0;
    for (std::size_t k = 0; k < 128; ++k) worst = std::max(worst, std::abs(img.coeff(k) - expect[k]));
    CHECK(worst < 1e-14);
    CHECK(std::abs(norm(img) - 1.0) < 1e-12);

    const H2Function c = compose(H2Function::constant(1.0, 256), phi.map(), grid);
    CHECK(std::abs(c.coeff(0) - 1.0) < 1e-15);
    CHECK(norm(c) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("composition errors") {
  const H2Function z = H2Function::monomial(1, 64);
  try {
    compose(z, MoebiusMap(0.5, 0.0, 0.0, 1.0), BoundaryGrid(256));
    FAIL("accepted a map that moves the circle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  try {
    compose(z, make_canonical(2.0).map(), BoundaryGrid(128));
    FAIL("accepted an undersized grid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("norm, inner product, multiply") {
  CHECK(norm(H2Function::constant(1.0, 8)) == 1.0);
  CHECK(inner(H2Function::monomial(1, 8), H2Function::monomial(2, 8)) == Complex{});
  const std::vector<Complex> p{Complex(1, 2), Complex(0, 1)};
  const std::vector<Complex> q{Complex(3, 0), Complex(1, -1)};
  // Conjugate-linear in the second slot: (1+2i)*3 + i*(1+i).
  CHECK(std::abs(inner(H2Function::polynomial(p, 8), H2Function::polynomial(q, 8)) -
                 Complex(2, 7)) < 1e-15);

  const H2Function f = weight_function({0.75, 0.25}, 64);
  CHECK(max_abs_diff(multiply(f, H2Function::constant(1.0, 64)), f) < 1e-15);

  const std::vector<Complex> a{1.0, -1.0}, b{1.0, 1.0};
  const H2Function prod = multiply(H2Function::polynomial(a, 8), H2Function::polynomial(b, 8));
  CHECK(max_abs_diff(prod, weight_function({1.0, 1.0}, 8)) < 1e-15);

  const H2Function s = weight_function({0.5, 0.5}, 4096);
  CHECK(max_abs_diff(multiply(s, s), weight_function({1.0, 1.0}, 4096)) < 1e-10);

  // Products that spill past the budget report the spilled energy.
  const H2Function hi = H2Function::monomial(6, 8);
  const H2Function spilled = multiply(hi, hi);
  CHECK(norm(spilled) < 1e-15);
  CHECK(spilled.tail_energy() == doctest::Approx(1.0));
}

TEST_CASE("Poisson quadratic form examples") {
  const double r = 0.5;
  CHECK(poisson_quadratic_form(H2Function::monomial(1, 8), r) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<Complex> p{1.0, 1.0};
  CHECK(poisson_quadratic_form(H2Function::polynomial(p, 8), r) ==
        doctest::Approx(2.0 + 2.0 * r).epsilon(1e-15));
  const H2Function w = weight_function({0.5, 0.5}, 512);
  CHECK(poisson_quadratic_form(w, 0.0) == doctest::Approx(w.norm_squared()).epsilon(1e-15));
  CHECK_THROWS_AS(poisson_quadratic_form(w, 1.0), Error);
  CHECK_THROWS_AS(poisson_quadratic_form(w, Complex(0.8, 0.8)), Error);
}

TEST_CASE("change of variables on random polynomials") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> deg(1, 64);
  for (int t = 0; t < 40; ++t) {
    const HyperbolicAutomorphism phi = random_hyperbolic(rng);
    const int d = deg(rng);
    const auto p = random_poly(rng, d);
    const std::size_t n = budget_for(d, phi.map());
    const H2Function f = H2Function::polynomial(p, n);
    const H2Function img = compose(f, phi.map(), BoundaryGrid(recommended_grid_size(n, phi.map(), 8)));
    const double q = poisson_quadratic_form(f, phi(0.0));
    CHECK(std::abs(img.norm_squared() - q) <= 1e-8 * f.norm_squared());
    // Brute-force boundary mean as an independent reference.
    const double brute = oracle::boundary_norm_sq(p, [&](Complex w) { return phi(w); }, 1 << 14);
    CHECK(std::abs(brute - q) <= 1e-8 * f.norm_squared());
  }
}

TEST_CASE("composition semigroup") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const HyperbolicAutomorphism phi = random_hyperbolic(rng);
    const MoebiusMap phi2 = iterate(phi, 2);
    const auto p = random_poly(rng, 16);
    const std::size_t n = budget_for(16, phi2);
    const H2Function f = H2Function::polynomial(p, n);
    const BoundaryGrid grid(recommended_grid_size(n, phi2, 8));
    const H2Function twice = compose(compose(f, phi.map(), grid), phi.map(), grid);
    const H2Function once = compose(f, phi2, grid);
    CHECK(norm(twice - once) <= 1e-8 * norm(once));
  }
}

TEST_CASE("eigen relation for the explicit family") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-0.3, 0.3), im(-3.0, 3.0);
  for (double mu : {1.5, 2.0, 4.0}) {
    const HyperbolicAutomorphism phi = make_canonical(mu);
    const BoundaryGrid grid(recommended_grid_size(4096, phi.map(), 8));
    for (int t = 0; t < 4; ++t) {
      const Complex a(re(rng), im(rng));
      const H2Function f = eigenfunction_fa(a, 4096);
      const H2Function img = compose(f, phi.map(), grid);
      const Complex lambda = std::exp(a * std::log(mu));
      CHECK(relative_eigen_residual(img, f, lambda) <= 1e-6);
    }
  }
}

TEST_CASE("norm bounds under composition") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const HyperbolicAutomorphism phi = random_hyperbolic(rng);
    const auto p = random_poly(rng, 32);
    const std::size_t n = budget_for(32, phi.map());
    const H2Function f = H2Function::polynomial(p, n);
    const double nf = norm(compose(f, phi.map(), BoundaryGrid(recommended_grid_size(n, phi.map(), 8))));
    const double s = std::sqrt(phi.multiplier());
    CHECK(nf <= s * norm(f) * (1 + 1e-9));
    CHECK(nf >= norm(f) / s * (1 - 1e-9));
  }
}

TEST_CASE("identity composition round trip") {
  std::mt19937_64 rng(29);
  const auto p = random_poly(rng, 200);
  const H2Function f = H2Function::polynomial(p, 256);
  const H2Function g = compose(f, MoebiusMap::identity(), BoundaryGrid(1024));
  CHECK(max_abs_diff(f, g) < 1e-13 * norm(f));
  const H2Function w = weight_function({0.75, 0.75}, 512);
  CHECK(max_abs_diff(w, compose(w, MoebiusMap::identity(), BoundaryGrid(2048))) < 1e-13);
}

TEST_CASE("boundary grid quadrature of monomials") {
  const BoundaryGrid grid(64);
  CHECK(grid.weight() == 1.0 / 64);
  for (int k = -130; k <= 130; ++k) {
    Complex s{};
    for (auto w : grid.nodes()) s += std::pow(w, k);
    s *= grid.weight();
    const double expect = (k % 64 == 0) ? 1.0 : 0.0;
    CHECK(std::abs(s - expect) < 1e-12);
  }
  CHECK_THROWS_AS(BoundaryGrid(48), Error);
}

TEST_CASE("DFT helpers") {
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(1000));
  CHECK(next_power_of_two(1000) == 1024);
  std::mt19937_64 rng(31);
  const auto c = random_poly(rng, 63);
  const auto back = analysis_dft(synthesis_dft(c, 64));
  for (std::size_t k = 0; k < 64; ++k) CHECK(std::abs(back[k] - c[k]) < 1e-13);
}
