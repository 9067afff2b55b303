#pragma once
// Reference computations kept independent of the library's code paths:
// direct formulas, brute-force quadrature and values frozen from a
// 40-digit adaptive-quadrature run.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline C mobius(C a, C b, C c, C d, C z) { return (a * z + b) / (c * z + d); }

// (r + z) / (1 + r z)
inline C canonical(double r, C z) { return (r + z) / (1.0 + r * z); }

// Taylor coefficients of (r + z) / (1 + r z): r, then (1 - r^2)(-r)^{k-1}.
inline std::vector<C> canonical_series(double r, std::size_t n) {
  std::vector<C> c(n);
  if (n > 0) c[0] = r;
  double p = 1.0 - r * r;
  for (std::size_t k = 1; k < n; ++k, p *= -r) c[k] = p;
  return c;
}

// Coefficients of (1 - u)^s by the falling-factorial product, as long double.
inline std::vector<double> binomial_series(double s, std::size_t n) {
  std::vector<double> c(n);
  long double v = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = static_cast<double>(v);
    v *= -(static_cast<long double>(s) - k) / static_cast<long double>(k + 1);
  }
  return c;
}

inline C horner(const std::vector<C>& c, C z) {
  C acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Mean of |p(m(w))|^2 over M equispaced nodes; exact for the polynomial degree
// well below M once the image series has decayed.
template <class Map>
double boundary_norm_sq(const std::vector<C>& p, Map m, std::size_t nodes) {
  double s = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    const C w = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    s += std::norm(horner(p, m(w)));
  }
  return s / nodes;
}

// ((1 + z) / (1 - z))^a with principal branches.
inline C fa(C a, C z) { return std::exp(a * std::log((1.0 + z) / (1.0 - z))); }

// ||(1 - z)^g||^2 = Gamma(1 + 2g) / Gamma(1 + g)^2.
inline double weight_norm_sq(double g) {
  return std::tgamma(1.0 + 2.0 * g) / (std::tgamma(1.0 + g) * std::tgamma(1.0 + g));
}

// ||f o phi_n|| for mu = 2, frozen from integral |f|^2 P_{r_n} dm at 40 digits.
struct FrozenNorm {
  int n;
  double value;
};
// f = (1 - z)^{3/4} (1 + z)^{3/4}
inline const std::vector<FrozenNorm> kW3434 = {
    {0, 1.2545068614219673},   {1, 1.1926146635273157},    {2, 1.0343838140985488},
    {5, 0.48267418688168165},  {10, 0.09421336481603314},  {20, 0.0029991244387373569},
    {-1, 1.1926146635273157},  {-5, 0.48267418688168165},  {-20, 0.0029991244387373569}};
// f = (1 - z)^{3/4}
inline const std::vector<FrozenNorm> kW340 = {
    {0, 1.2545068614219673},   {1, 1.0529471494902367},    {2, 0.84114082117168884},
    {5, 0.35429567676292608},  {10, 0.066997298426914545}, {20, 0.0021210650073199413},
    {-1, 1.418142238551191},   {-5, 1.6603219937466249},   {-20, 1.6817921611861234}};
// f = (1 - z)^{1/2} (1 + z)^{1/2}
inline const std::vector<FrozenNorm> kW1212 = {
    {0, 1.1283791670955126},   {1, 1.0847687314880264},    {2, 0.97024664938937741},
    {5, 0.52541801837455408},  {10, 0.13129041358977737},  {20, 0.0058022685928957696},
    {-1, 1.0847687314880264},  {-5, 0.52541801837455408},  {-20, 0.0058022685928957696}};

}  // namespace oracle
