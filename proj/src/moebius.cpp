#include "hypcomp/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hypcomp/error.hpp"

namespace hypcomp {

namespace {

constexpr double kClassifyBand = 1e-9;
constexpr double kUnitTol = 1e-9;

double scale_of(const MoebiusMap& m) {
  return std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.c()), std::abs(m.d())});
}

// Derivative at a fixed point, with the chart 1/z at infinity.
Complex derivative_at(const MoebiusMap& m, const ExtendedPoint& p) {
  if (p.infinite) return m.d() / m.a();
  return m.derivative(p.value);
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMultiplier: return "invalid multiplier";
    case ErrorKind::InvalidMap: return "invalid map";
    case ErrorKind::NotHyperbolic: return "not hyperbolic";
    case ErrorKind::NoFixedPoints: return "no fixed points";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::NotInH2: return "not in H2";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Numerical: return "numerical error";
  }
  return "error";
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Identity: return "identity";
    case MapKind::Elliptic: return "elliptic";
    case MapKind::Parabolic: return "parabolic";
    case MapKind::Hyperbolic: return "hyperbolic";
    case MapKind::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

bool near(const ExtendedPoint& p, const ExtendedPoint& q, double tol) {
  if (p.infinite || q.infinite) return p.infinite && q.infinite;
  return std::abs(p.value - q.value) <= tol;
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(s > 0.0) || !std::isfinite(s) || std::abs(a * d - b * c) <= 1e-14 * s * s) {
    throw Error(ErrorKind::InvalidMap, "degenerate coefficients (ad - bc = 0)");
  }
}

ExtendedPoint MoebiusMap::operator()(const ExtendedPoint& z) const {
  if (z.infinite) {
    if (c_ == Complex{}) return ExtendedPoint::at_infinity();
    return ExtendedPoint::finite(a_ / c_);
  }
  const Complex den = c_ * z.value + d_;
  if (den == Complex{}) return ExtendedPoint::at_infinity();
  return ExtendedPoint::finite((a_ * z.value + b_) / den);
}

Complex MoebiusMap::derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  return determinant() / (den * den);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
  MoebiusMap r(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
               c_ * o.b_ + d_ * o.d_);
  // Keep coefficients O(1) along long chains.
  return r.normalized();
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

MoebiusMap MoebiusMap::normalized() const {
  const Complex s = std::sqrt(determinant());
  return {a_ / s, b_ / s, c_ / s, d_ / s};
}

bool MoebiusMap::projectively_equal(const MoebiusMap& other, double tol) const {
  const MoebiusMap p = normalized();
  const MoebiusMap q = other.normalized();
  const std::array<Complex, 4> u{p.a_, p.b_, p.c_, p.d_};
  const std::array<Complex, 4> v{q.a_, q.b_, q.c_, q.d_};
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    plus = std::max(plus, std::abs(u[i] - v[i]));
    minus = std::max(minus, std::abs(u[i] + v[i]));
  }
  return std::min(plus, minus) <= tol * std::max(1.0, scale_of(p));
}

MapKind classify(const MoebiusMap& m) {
  const MoebiusMap n = m.normalized();
  const double s = scale_of(n);
  if (std::abs(n.b()) <= kClassifyBand * s && std::abs(n.c()) <= kClassifyBand * s &&
      std::abs(n.a() - n.d()) <= kClassifyBand * s) {
    return MapKind::Identity;
  }
  const Complex tr = n.a() + n.d();
  const Complex t = tr * tr;
  if (std::abs(t - 4.0) <= kClassifyBand * std::max(1.0, s * s)) return MapKind::Parabolic;
  if (std::abs(t.imag()) <= kClassifyBand * std::max(1.0, std::abs(t))) {
    if (t.real() >= 0.0 && t.real() < 4.0) return MapKind::Elliptic;
    if (t.real() > 4.0) return MapKind::Hyperbolic;
  }
  return MapKind::Loxodromic;
}

std::pair<ExtendedPoint, ExtendedPoint> fixed_points(const MoebiusMap& m) {
  const MapKind kind = classify(m);
  if (kind == MapKind::Identity) {
    throw Error(ErrorKind::NoFixedPoints, "identity map fixes every point");
  }
  const MoebiusMap n = m.normalized();
  const Complex a = n.a(), b = n.b(), c = n.c(), d = n.d();
  const double s = scale_of(n);

  if (std::abs(c) <= 1e-14 * s) {
    if (kind == MapKind::Parabolic) {
      return {ExtendedPoint::at_infinity(), ExtendedPoint::at_infinity()};
    }
    return {ExtendedPoint::finite(b / (d - a)), ExtendedPoint::at_infinity()};
  }

  // c z^2 + (d - a) z - b = 0, roots taken without cancellation.
  const Complex p = d - a;
  const Complex root = std::sqrt(p * p + 4.0 * b * c);
  const Complex q = (std::real(std::conj(p) * root) >= 0.0) ? -0.5 * (p + root)
                                                            : -0.5 * (p - root);
  ExtendedPoint z1, z2;
  if (q == Complex{}) {
    z1 = z2 = ExtendedPoint::finite(-p / (2.0 * c));
  } else {
    z1 = ExtendedPoint::finite(q / c);
    z2 = ExtendedPoint::finite(-b / q);
  }
  if (kind == MapKind::Parabolic) {
    const ExtendedPoint mid = ExtendedPoint::finite(0.5 * (z1.value + z2.value));
    return {mid, mid};
  }
  if (std::abs(m.derivative(z2.value)) < std::abs(m.derivative(z1.value))) std::swap(z1, z2);
  return {z1, z2};
}

Complex multiplier(const MoebiusMap& m) {
  const MapKind kind = classify(m);
  if (kind == MapKind::Identity || kind == MapKind::Parabolic) {
    throw Error(ErrorKind::NotHyperbolic,
                std::string("multiplier needs two distinct fixed points; map is ") +
                    to_string(kind));
  }
  const auto [p1, p2] = fixed_points(m);
  (void)p2;
  const Complex k = derivative_at(m, p1);
  return std::abs(k) >= 1.0 ? k : 1.0 / k;
}

CanonicalParams CanonicalParams::from_multiplier(double mu) {
  if (!(mu > 1.0) || !std::isfinite(mu)) {
    throw Error(ErrorKind::InvalidMultiplier, "multiplier must be a real number > 1");
  }
  return {mu, (mu - 1.0) / (mu + 1.0)};
}

HyperbolicAutomorphism::HyperbolicAutomorphism(MoebiusMap map, MoebiusMap normalizer,
                                               Complex alpha, Complex beta, double mu,
                                               bool canonical)
    : map_(map),
      normalizer_(normalizer),
      alpha_(alpha),
      beta_(beta),
      mu_(mu),
      canonical_(canonical) {}

HyperbolicAutomorphism HyperbolicAutomorphism::canonical(double mu) {
  const CanonicalParams p = CanonicalParams::from_multiplier(mu);
  return {MoebiusMap(1.0, p.r, p.r, 1.0), MoebiusMap::identity(), 1.0, -1.0, mu, true};
}

HyperbolicAutomorphism HyperbolicAutomorphism::from_map(const MoebiusMap& m) {
  if (classify(m) != MapKind::Hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, std::string("map is ") + to_string(classify(m)));
  }
  // Disc automorphism: circle to circle, origin stays inside.
  for (int k = 0; k < 8; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0 + 0.1);
    const ExtendedPoint v = m.apply(w);
    if (v.infinite || std::abs(std::abs(v.value) - 1.0) > kUnitTol) {
      throw Error(ErrorKind::InvalidMap, "map does not preserve the unit circle");
    }
  }
  const ExtendedPoint origin = m.apply(0.0);
  if (origin.infinite || std::abs(origin.value) >= 1.0) {
    throw Error(ErrorKind::InvalidMap, "map does not send the disc onto the disc");
  }

  auto [p, q] = fixed_points(m);
  if (p.infinite || q.infinite || std::abs(std::abs(p.value) - 1.0) > kUnitTol ||
      std::abs(std::abs(q.value) - 1.0) > kUnitTol) {
    throw Error(ErrorKind::InvalidMap, "fixed points are not on the unit circle");
  }
  const double dp = std::abs(m.derivative(p.value));
  const double dq = std::abs(m.derivative(q.value));
  if (std::abs(dp - 1.0) <= kClassifyBand || std::abs(dq - 1.0) <= kClassifyBand) {
    throw Error(ErrorKind::NotHyperbolic, "fixed-point derivative within 1e-9 of modulus 1");
  }
  if (dq < dp) std::swap(p, q);
  const Complex alpha = p.value / std::abs(p.value);
  const Complex beta = q.value / std::abs(q.value);
  const double mu = 1.0 / std::min(dp, dq);

  const bool canonical = std::abs(alpha - 1.0) <= kUnitTol && std::abs(beta + 1.0) <= kUnitTol;
  const MoebiusMap psi = canonical ? MoebiusMap::identity() : conjugator(alpha, beta);
  return {m, psi, canonical ? Complex(1.0) : alpha, canonical ? Complex(-1.0) : beta, mu,
          canonical};
}

HyperbolicAutomorphism make_canonical(double mu) { return HyperbolicAutomorphism::canonical(mu); }

double canonical_iterate_parameter(double mu, int n) {
  return std::tanh(0.5 * static_cast<double>(n) * std::log(mu));
}

double canonical_iterate_gap(double mu, int n) {
  // 1 - tanh(x) = 2 / (e^{2x} + 1)
  return 2.0 / (std::pow(mu, n) + 1.0);
}

MoebiusMap iterate(const HyperbolicAutomorphism& phi, int n) {
  if (n == 0) return MoebiusMap::identity();
  const double r = canonical_iterate_parameter(phi.multiplier(), n);
  const MoebiusMap canon(1.0, r, r, 1.0);
  if (phi.is_canonical()) return canon;
  const MoebiusMap& psi = phi.normalizer();
  return psi.compose(canon).compose(psi.inverse());
}

MoebiusMap iterate_by_composition(const MoebiusMap& m, int n) {
  MoebiusMap base = n < 0 ? m.inverse().normalized() : m.normalized();
  unsigned k = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
  MoebiusMap acc = MoebiusMap::identity();
  while (k != 0) {
    if (k & 1u) acc = acc.compose(base);
    base = base.compose(base);
    k >>= 1u;
  }
  return acc;
}

MoebiusMap cayley_map() { return {1.0, -1.0, 1.0, 1.0}; }
MoebiusMap cayley_inverse_map() { return {1.0, 1.0, -1.0, 1.0}; }

ExtendedPoint cayley(const ExtendedPoint& w) { return cayley_map()(w); }
ExtendedPoint cayley_inverse(const ExtendedPoint& z) { return cayley_inverse_map()(z); }

MoebiusMap conjugator(Complex alpha, Complex beta) {
  if (std::abs(std::abs(alpha) - 1.0) > kUnitTol || std::abs(std::abs(beta) - 1.0) > kUnitTol) {
    throw Error(ErrorKind::Domain, "conjugator needs unimodular points");
  }
  if (std::abs(alpha - beta) <= kUnitTol) {
    throw Error(ErrorKind::Domain, "conjugator needs distinct points");
  }
  if (std::abs(alpha - 1.0) <= kUnitTol && std::abs(beta + 1.0) <= kUnitTol) {
    return MoebiusMap::identity();
  }

  // The half-plane coordinates i*a' of alpha and beta must be finite, so
  // rotate the pair away from +1 first when needed.
  Complex spin = 1.0;
  if (std::min(std::abs(alpha - 1.0), std::abs(beta - 1.0)) < 1e-3) {
    double best = -1.0;
    for (int k = 1; k < 6; ++k) {
      const Complex w = std::polar(1.0, std::numbers::pi * k / 3.0);
      const double gap = std::min(std::abs(w * alpha - 1.0), std::abs(w * beta - 1.0));
      if (gap > best) {
        best = gap;
        spin = w;
      }
    }
  }
  const Complex ra = spin * alpha;
  const Complex rb = spin * beta;
  const double ia = ((1.0 + ra) / (1.0 - ra)).imag();
  const double ib = ((1.0 + rb) / (1.0 - rb)).imag();

  // Inverse of Psi(w) = i (w - i ib) / (w - i ia), precomposed with -1 when
  // ia > ib so that it preserves the right half-plane.
  const double sign = ia < ib ? 1.0 : -1.0;
  const Complex I(0.0, 1.0);
  const MoebiusMap half_plane(I * ia * sign, ib, sign, -I);
  const MoebiusMap psi = cayley_map().compose(half_plane).compose(cayley_inverse_map());
  return MoebiusMap::rotation(std::conj(spin)).compose(psi);
}

HyperbolicAutomorphism conjugate(const HyperbolicAutomorphism& phi, const MoebiusMap& psi) {
  return HyperbolicAutomorphism::from_map(psi.compose(phi.map()).compose(psi.inverse()));
}

}  // namespace hypcomp
