#include "hypcomp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hypcomp/boundary.hpp"
#include "hypcomp/eigen.hpp"
#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"
#include "hypcomp/poisson.hpp"
#include "hypcomp/report.hpp"
#include "hypcomp/spectrum.hpp"

namespace hypcomp {

namespace {

std::int64_t i64(long long v) { return static_cast<std::int64_t>(v); }

// Collects check rows and remembers whether any failed.
class Summary {
 public:
  Summary(const std::filesystem::path& path, std::ostream* log)
      : csv_(path, {"check", "value", "threshold", "result"}), log_(log) {}

  void check(const std::string& name, double value, double threshold, bool ok) {
    csv_.row({name, value, threshold, std::string(ok ? "pass" : "fail")});
    failed_ = failed_ || !ok;
    if (log_) *log_ << (ok ? "  pass  " : "  FAIL  ") << name << " = " << format_double(value) << '\n';
  }
  void info(const std::string& name, double value) {
    csv_.row({name, value, std::nan(""), std::string("info")});
    if (log_) *log_ << "  info  " << name << " = " << format_double(value) << '\n';
  }
  int exit_code() const { return failed_ ? kExitViolation : kExitPass; }

 private:
  CsvWriter csv_;
  std::ostream* log_;
  bool failed_ = false;
};

std::filesystem::path file(const RunContext& ctx, const std::string& name) {
  return ctx.out_dir / name;
}

OrbitOptions orbit_options(const ExperimentConfig& c) {
  OrbitOptions o;
  o.window = c.budgets.window;
  o.grid.steps_per_period = c.budgets.steps_per_period;
  o.taylor_budget = c.budgets.taylor_budget;
  return o;
}

ScanOptions scan_options(const ExperimentConfig& c) {
  ScanOptions s;
  s.radial = c.scan.radial;
  s.angular = c.scan.angular;
  s.residual_tol = c.tolerances.residual;
  s.tail_tol = c.tolerances.tail;
  return s;
}

H2Function random_unit_polynomial(std::mt19937_64& rng, int max_degree, std::size_t budget) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> gauss;
  const int d = deg(rng);
  std::vector<Complex> c(static_cast<std::size_t>(d) + 1);
  double total = 0.0;
  for (auto& v : c) {
    v = Complex(gauss(rng), gauss(rng));
    total += std::norm(v);
  }
  for (auto& v : c) v /= std::sqrt(total);
  return H2Function::polynomial(c, budget);
}

int run_norm_identity(const ExperimentConfig& c, const RunContext& ctx) {
  const auto& spec = c.norm_identity;
  std::mt19937_64 rng(c.seed);
  CsvWriter csv(file(ctx, "norm-identity.csv"),
                {"trial", "mu", "degree", "norm_sq", "quadratic_form", "abs_error", "pass"});
  Summary summary(file(ctx, "norm-identity_summary.csv"), ctx.log);
  double worst = 0.0;
  for (int t = 0; t < spec.trials; ++t) {
    const double mu = spec.mus[static_cast<std::size_t>(t) % spec.mus.size()];
    AutomorphismSpec a = c.automorphism;
    a.mu = mu;
    const HyperbolicAutomorphism phi = a.build();
    // Image coefficients concentrate below degree * stretch.
    const double stretch = max_boundary_stretch(phi.map());
    const std::size_t budget = std::max(
        c.budgets.taylor_budget,
        next_power_of_two(static_cast<std::size_t>(8.0 * (spec.degree + 1) * stretch)));
    const H2Function f = random_unit_polynomial(rng, spec.degree, budget);
    std::size_t degree = 0;
    for (std::size_t k = 0; k < budget; ++k) {
      if (f.coeff(k) != Complex{}) degree = k;
    }
    const H2Function image =
        compose(f, phi.map(), BoundaryGrid(recommended_grid_size(budget, phi.map(), c.budgets.oversample)));
    const double lhs = image.norm_squared();
    const double rhs = poisson_quadratic_form(f, phi.map().at(0.0));
    const double err = std::abs(lhs - rhs);
    worst = std::max(worst, err);
    csv.row({i64(t), mu, i64(static_cast<long long>(degree)), lhs, rhs, err,
             err <= c.tolerances.norm_identity});
  }
  summary.check("max_abs_error", worst, c.tolerances.norm_identity,
                worst <= c.tolerances.norm_identity);
  return summary.exit_code();
}

int run_poisson_bounds(const ExperimentConfig& c, const RunContext& ctx) {
  const auto& spec = c.poisson;
  const double pi = std::numbers::pi;
  CsvWriter violations(file(ctx, "poisson-bounds.csv"),
                       {"kind", "mu", "rho", "theta", "kernel", "bound"});
  CsvWriter sums(file(ctx, "poisson-bounds_sums.csv"),
                 {"mu", "theta", "partial_sum", "bound", "terms"});
  Summary summary(file(ctx, "poisson-bounds_summary.csv"), ctx.log);

  // Pointwise kernel bound on rho in [0, 1), theta in [-pi, pi].
  long kernel_bad = 0;
  for (int i = 0; i < spec.rho_nodes; ++i) {
    const double gap = 1.0 - static_cast<double>(i) / spec.rho_nodes;
    for (int j = 0; j < spec.theta_nodes; ++j) {
      const double theta =
          spec.theta_nodes == 1 ? pi : -pi + 2.0 * pi * j / (spec.theta_nodes - 1);
      const double v = kernel_at_radius(gap, theta);
      const double b = kernel_bound_from_gap(gap, theta);
      if (!(v <= b)) {
        ++kernel_bad;
        violations.row({std::string("kernel"), std::nan(""), 1.0 - gap, theta, v, b});
      }
    }
  }
  summary.check("kernel_violations", static_cast<double>(kernel_bad), 0.0, kernel_bad == 0);

  // Orbit sums on log-spaced |theta| in [min_theta, pi], both signs.
  long sum_bad = 0;
  double worst_pi = 0.0;
  const int half = std::max(1, spec.sum_theta_nodes / 2);
  for (double mu : spec.mus) {
    for (int sgn : {-1, 1}) {
      for (int k = 0; k < half; ++k) {
        const double frac = half == 1 ? 1.0 : static_cast<double>(k) / (half - 1);
        const double theta = sgn * spec.min_theta * std::pow(pi / spec.min_theta, frac);
        const SumBoundReport r = orbit_kernel_sum(mu, theta, spec.sum_terms);
        sums.row({mu, theta, r.partial_sum, r.bound, i64(r.terms_used)});
        if (!r.holds()) {
          ++sum_bad;
          violations.row({std::string("orbit-sum"), mu, std::nan(""), theta, r.partial_sum, r.bound});
        }
      }
    }
    const SumBoundReport at_pi = orbit_kernel_sum(mu, pi, spec.sum_terms);
    worst_pi = std::max(worst_pi, std::abs(at_pi.partial_sum - mu / (mu - 1.0)));
  }
  summary.check("orbit_sum_violations", static_cast<double>(sum_bad), 0.0, sum_bad == 0);
  summary.check("theta_pi_closed_form_error", worst_pi, 1e-10, worst_pi <= 1e-10);
  return summary.exit_code();
}

int run_orbit(const ExperimentConfig& c, const RunContext& ctx) {
  const HyperbolicAutomorphism phi = c.automorphism.build();
  const OrbitFamily fam(BoundaryProfile::weight(c.weight()), phi, orbit_options(c));
  CsvWriter csv(file(ctx, "orbit.csv"), {"n", "norm", "quadrature_gap", "poisson_form_gap"});
  double worst_quad = 0.0;
  for (const auto& d : fam.diagnostics()) {
    csv.row({i64(d.index), d.norm, d.quadrature_gap, d.poisson_form_gap.value_or(std::nan(""))});
    worst_quad = std::max(worst_quad, d.quadrature_gap);
  }
  Summary summary(file(ctx, "orbit_summary.csv"), ctx.log);
  summary.check("max_quadrature_gap", worst_quad, 1e-10, worst_quad <= 1e-10);
  summary.info("decay_forward", fam.forward_fit() ? fam.forward_fit()->exponent : std::nan(""));
  summary.info("decay_backward", fam.backward_fit() ? fam.backward_fit()->exponent : std::nan(""));
  const SquareSum s = tail_square_sum(fam);
  summary.info("square_sum_partial", s.partial);
  summary.info("square_sum_cauchy_gap", s.cauchy_gap);
  const HypercyclicResult h = hypercyclic_check(fam, c.tolerances.hypercyclic);
  summary.info("hypercyclic", h.holds ? 1.0 : 0.0);
  summary.info("hypercyclic_first_failing_index",
               h.first_failing_index ? *h.first_failing_index : std::nan(""));
  summary.info("warnings", static_cast<double>(fam.warnings().size()));
  return summary.exit_code();
}

void write_scan_rows(CsvWriter& csv, const ScanResult& r, int case_index) {
  for (const auto& e : r.reports) {
    csv.row({e.lambda.real(), e.lambda.imag(), i64(e.truncation), e.eigenfunction_norm,
             e.relative_residual, e.exceptional, e.status, i64(case_index)});
  }
}

void check_scan(Summary& summary, const std::string& prefix, const ScanResult& r, double mu,
                const Tolerances& t) {
  summary.check(prefix + "pass_fraction", r.pass_fraction(), t.pass_fraction,
                r.pass_fraction() >= t.pass_fraction);
  summary.check(prefix + "exceptional", r.exceptional, t.max_exceptional,
                r.exceptional <= t.max_exceptional && r.exceptional_isolated());
  // Passing points must sit in the closed spectral annulus.
  long outside = 0;
  const double lo = 1.0 / std::sqrt(mu), hi = std::sqrt(mu);
  for (const auto& e : r.reports) {
    const double rad = std::abs(e.lambda);
    const bool passing = e.status != "divergent" && !e.exceptional &&
                         e.relative_residual <= t.residual;
    if (passing && (rad < lo * (1 - 1e-12) || rad > hi * (1 + 1e-12))) ++outside;
  }
  summary.check(prefix + "passing_outside_spectrum", static_cast<double>(outside), 0.0, outside == 0);
}

int run_eigen_scan(const ExperimentConfig& c, const RunContext& ctx) {
  const HyperbolicAutomorphism phi = c.automorphism.build();
  const double mu = phi.multiplier();
  CsvWriter csv(file(ctx, "eigen-scan.csv"),
                {"lambda_re", "lambda_im", "M", "norm", "residual", "exceptional", "status", "case"});
  Summary summary(file(ctx, "eigen-scan_summary.csv"), ctx.log);
  const ScanOptions so = scan_options(c);

  if (c.scan.mode == "holder") {
    const auto cases = holder_reduction_cases(c.scan.p, mu, c.scan.holder_count);
    for (std::size_t k = 0; k < cases.size(); ++k) {
      WeightSpec w = cases[k].weight;
      w.attractive = phi.attractive();
      w.repulsive = phi.repulsive();
      const OrbitFamily fam(BoundaryProfile::weight(w), phi, orbit_options(c));
      const ScanResult r = eigen_scan(fam, cases[k].annulus, so);
      write_scan_rows(csv, r, static_cast<int>(k));
      std::ostringstream prefix;
      prefix << "case" << k << "_delta" << cases[k].delta << "_";
      check_scan(summary, prefix.str(), r, mu, c.tolerances);
    }
    return summary.exit_code();
  }

  WeightSpec w = c.weight();
  if (c.scan.mode == "reversed") std::swap(w.gamma, w.delta);
  const OrbitFamily fam(BoundaryProfile::weight(w), phi, orbit_options(c));
  const ScanResult r = eigen_scan(fam, Annulus(c.scan.inner, c.scan.outer), so);
  write_scan_rows(csv, r, 0);
  check_scan(summary, "", r, mu, c.tolerances);
  if (fam.forward_fit()) summary.info("decay_forward", fam.forward_fit()->exponent);
  if (fam.backward_fit()) summary.info("decay_backward", fam.backward_fit()->exponent);
  if (c.scan.mode == "one-sided" || c.scan.mode == "reversed") {
    const Direction side = c.scan.mode == "one-sided" ? Direction::Backward : Direction::Forward;
    const OneSidedReport o = one_sided_check(fam, side);
    summary.info("maximal_at_fixed_point", o.maximal);
    summary.check("one_sided_sup_over_first", o.sup / o.first, 2.0, o.bounded);
  }
  return summary.exit_code();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_circle_eigen(const ExperimentConfig& c, const RunContext& ctx) {
  const HyperbolicAutomorphism phi = c.automorphism.build();
  const OrbitFamily fam(BoundaryProfile::weight(c.weight()), phi, orbit_options(c));
  CsvWriter csv(file(ctx, "circle-eigen.csv"),
                {"omega_re", "omega_im", "M", "norm", "identity_residual", "eigen_residual"});
  Summary summary(file(ctx, "circle-eigen_summary.csv"), ctx.log);

  const SquareSum s = tail_square_sum(fam);
  summary.check("cauchy_gap_over_partial", s.cauchy_gap / s.partial, c.tolerances.cauchy,
                s.cauchy_gap <= c.tolerances.cauchy * s.partial);

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> omegas(static_cast<std::size_t>(c.circle.omega_samples));
  for (auto& w : omegas) w = std::polar(1.0, angle(rng));

  std::vector<int> ms = c.circle.truncations;
  std::sort(ms.begin(), ms.end());
  double worst_identity = 0.0;
  std::vector<double> medians;
  for (int m : ms) {
    std::vector<double> eig;
    for (const Complex w : omegas) {
      const CirclePartial p = circle_eigen_partial(fam, w, m);
      csv.row({w.real(), w.imag(), i64(m), p.norm, p.identity_residual, p.eigen_residual});
      worst_identity = std::max(worst_identity, p.identity_residual);
      eig.push_back(p.eigen_residual);
    }
    medians.push_back(median(eig));
    summary.info("median_eigen_residual_M" + std::to_string(m), medians.back());
  }
  summary.check("max_identity_residual", worst_identity, c.tolerances.identity,
                worst_identity <= c.tolerances.identity);
  bool decreasing = true;
  for (std::size_t i = 1; i < medians.size(); ++i) decreasing = decreasing && medians[i] < medians[i - 1];
  summary.check("median_residual_decreasing", decreasing ? 1.0 : 0.0, 1.0, decreasing);
  return summary.exit_code();
}

std::vector<Complex> interior_grid(double mu, int count, double margin) {
  const double lo = std::pow(mu, -0.5) * (1.0 + margin);
  const double hi = std::pow(mu, 0.5) * (1.0 - margin);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double r = lo * std::pow(hi / lo, (i + 0.5) / count);
    for (int j = 0; j < count; ++j) {
      out.push_back(std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / count));
    }
  }
  return out;
}

int run_spectrum(const ExperimentConfig& c, const RunContext& ctx) {
  Summary summary(file(ctx, "spectrum_summary.csv"), ctx.log);
  {
    CsvWriter csv(file(ctx, "spectrum_norms.csv"),
                  {"mu", "N", "sigma_max", "sqrt_mu", "sigma_min_resolved", "resolved_columns",
                   "aliased_columns"});
    for (double mu : c.spectrum.mus) {
      AutomorphismSpec a = c.automorphism;
      a.mu = mu;
      const HyperbolicAutomorphism phi = a.build();
      std::vector<std::size_t> dims = c.spectrum.dims;
      std::sort(dims.begin(), dims.end());
      double prev = 0.0;
      bool monotone = true;
      double worst_excess = -1e300;
      double worst_min = 1e300;
      for (std::size_t n : dims) {
        const CompressionMatrix m = truncated_matrix(
            phi, n, BoundaryGrid(recommended_grid_size(n, phi.map(), c.budgets.oversample)));
        const double smax = operator_norm_estimate(m);
        const double smin = smallest_singular_value(m);
        const long aliased = std::count(m.aliased.begin(), m.aliased.end(), true);
        csv.row({mu, i64(static_cast<long long>(n)), smax, std::sqrt(mu), smin,
                 i64(static_cast<long long>(m.resolved_columns)), i64(aliased)});
        monotone = monotone && smax >= prev * (1.0 - 1e-12);
        prev = smax;
        worst_excess = std::max(worst_excess, smax - std::sqrt(mu));
        worst_min = std::min(worst_min, smin * std::sqrt(mu));
      }
      std::ostringstream tag;
      tag << "mu" << mu << "_";
      summary.check(tag.str() + "sigma_max_minus_sqrt_mu", worst_excess, c.tolerances.norm_bound,
                    worst_excess <= c.tolerances.norm_bound);
      summary.check(tag.str() + "sigma_max_nondecreasing", monotone ? 1.0 : 0.0, 1.0, monotone);
      summary.check(tag.str() + "sigma_min_times_sqrt_mu", worst_min, 1.0 - 1e-6,
                    worst_min >= 1.0 - 1e-6);
    }
  }

  const HyperbolicAutomorphism phi = c.automorphism.build();
  const double mu = phi.multiplier();
  std::vector<Complex> lambdas = interior_grid(mu, c.spectrum.residual_grid, c.spectrum.margin);
  const std::size_t interior = lambdas.size();
  // Probes: the constant eigenvalue, an outside point, a boundary point.
  lambdas.push_back(1.0);
  lambdas.push_back(std::sqrt(mu) * 1.25);
  lambdas.push_back(std::polar(std::sqrt(mu), 0.0));
  ResidualMapOptions ro;
  ro.budget = c.budgets.n;
  const std::vector<ResidualPoint> pts = annulus_residual_map(phi, lambdas, ro);
  CsvWriter csv(file(ctx, "spectrum_residuals.csv"),
                {"lambda_re", "lambda_im", "residual", "status", "gram_det"});
  double worst = 0.0;
  double min_gram = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    csv.row({p.lambda.real(), p.lambda.imag(), p.residual, std::string(to_string(p.status)),
             p.gram_det});
    if (i < interior) {
      worst = std::max(worst, p.status == SpectralStatus::Inside ? p.residual : 1e300);
      min_gram = std::min(min_gram, p.gram_det);
    }
  }
  summary.check("max_interior_residual", worst, c.tolerances.spectrum_residual,
                worst <= c.tolerances.spectrum_residual);
  summary.check("min_gram_det", min_gram, c.tolerances.gram, min_gram >= c.tolerances.gram);
  const bool probes = pts[interior].status == SpectralStatus::Inside &&
                      pts[interior].residual <= c.tolerances.spectrum_residual &&
                      pts[interior + 1].status == SpectralStatus::Outside &&
                      pts[interior + 2].status == SpectralStatus::Boundary;
  summary.check("probe_statuses", probes ? 1.0 : 0.0, 1.0, probes);
  return summary.exit_code();
}

int run_conjugacy(const ExperimentConfig& c, const RunContext& ctx) {
  Summary summary(file(ctx, "conjugacy_summary.csv"), ctx.log);
  const double mu = c.automorphism.mu;
  const HyperbolicAutomorphism canon = HyperbolicAutomorphism::canonical(mu);
  const HyperbolicAutomorphism phi = c.automorphism.build();
  const MoebiusMap& psi = phi.normalizer();

  const double dmu = std::abs(phi.multiplier() - mu);
  summary.check("multiplier_change", dmu, c.tolerances.multiplier, dmu <= c.tolerances.multiplier);
  if (c.automorphism.attractive) {
    const double da = std::abs(phi.attractive() - *c.automorphism.attractive) +
                      std::abs(phi.repulsive() - *c.automorphism.repulsive);
    summary.check("fixed_point_error", da, 1e-10, da <= 1e-10);
  }

  // Similarity: f o phi == ((f o psi) o canonical) o psi^{-1} on random polynomials.
  std::mt19937_64 rng(c.seed);
  const std::size_t budget = c.budgets.taylor_budget;
  const MoebiusMap back = psi.inverse();
  auto grid_for = [&](const MoebiusMap& m) {
    return BoundaryGrid(recommended_grid_size(budget, m, c.budgets.oversample));
  };
  double worst_sim = 0.0;
  for (int t = 0; t < 16; ++t) {
    const H2Function f = random_unit_polynomial(rng, 16, budget);
    const H2Function direct = compose(f, phi.map(), grid_for(phi.map()));
    const H2Function chain =
        compose(compose(compose(f, psi, grid_for(psi)), canon.map(), grid_for(canon.map())), back,
                grid_for(back));
    const std::size_t band = std::min(direct.resolved_band(), chain.resolved_band());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < band; ++k) {
      num += std::norm(direct.coeff(k) - chain.coeff(k));
      den += std::norm(direct.coeff(k));
    }
    worst_sim = std::max(worst_sim, std::sqrt(num / den));
  }
  summary.check("similarity_relative_error", worst_sim, 1e-8, worst_sim <= 1e-8);

  // Weight transport: |w_canonical(zeta)| / |w_transported(psi(zeta))| stays
  // within stretch(psi)^{+-(gamma+delta)} on the orbit grid nodes.
  const WeightSpec wt = c.weight();
  WeightSpec wc = wt;
  wc.attractive = 1.0;
  wc.repulsive = -1.0;
  const BoundaryProfile pc = BoundaryProfile::weight(wc);
  const BoundaryProfile pt = BoundaryProfile::weight(wt);
  const OrbitGrid gc(canon, c.budgets.window);
  const OrbitGrid gt(phi, c.budgets.window);
  double lo = 1e300, hi = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (long j = -gc.base_extent(); j <= gc.base_extent(); ++j) {
      const double num = std::abs(pc(gc.node(b, j)));
      const double den = std::abs(pt(gt.node(b, j)));
      if (num == 0.0 || den == 0.0) continue;
      lo = std::min(lo, num / den);
      hi = std::max(hi, num / den);
    }
  }
  const double spread_bound = std::pow(max_boundary_stretch(psi), 2.0 * (wt.gamma + wt.delta));
  summary.check("weight_ratio_spread", hi / lo, spread_bound, hi / lo <= spread_bound * (1 + 1e-9));

  // Scan reproduction on the transported weight.
  const ScanOptions so = scan_options(c);
  const Annulus ann(c.scan.inner, c.scan.outer);
  const ScanResult rc = eigen_scan(OrbitFamily(BoundaryProfile::weight(wc), canon, orbit_options(c)), ann, so);
  const ScanResult rt = eigen_scan(OrbitFamily(pt, phi, orbit_options(c)), ann, so);
  CsvWriter csv(file(ctx, "conjugacy.csv"),
                {"lambda_re", "lambda_im", "M", "norm", "residual", "exceptional", "status", "case"});
  write_scan_rows(csv, rc, 0);
  write_scan_rows(csv, rt, 1);
  const double dpass = std::abs(rc.pass_fraction() - rt.pass_fraction());
  summary.info("canonical_pass_fraction", rc.pass_fraction());
  summary.check("transported_pass_fraction", rt.pass_fraction(), c.tolerances.pass_fraction,
                rt.pass_fraction() >= c.tolerances.pass_fraction);
  summary.check("pass_fraction_difference", dpass, 1.0 / static_cast<double>(rc.reports.size()),
                dpass <= 1.0 / static_cast<double>(rc.reports.size()));
  return summary.exit_code();
}

}  // namespace

std::string plan(const std::string& sub, const ExperimentConfig& c) {
  std::ostringstream os;
  os << sub << ": mu=" << c.automorphism.mu;
  if (sub == "norm-identity") {
    os << " trials=" << c.norm_identity.trials << " degree<=" << c.norm_identity.degree
       << " taylor_budget>=" << c.budgets.taylor_budget;
  } else if (sub == "poisson-bounds") {
    os << " kernel grid " << c.poisson.rho_nodes << "x" << c.poisson.theta_nodes << ", "
       << c.poisson.sum_theta_nodes << " theta nodes x " << c.poisson.mus.size()
       << " multipliers, " << c.poisson.sum_terms << " terms";
  } else if (sub == "orbit" || sub == "circle-eigen") {
    os << " weight(" << c.gamma << "," << c.delta << ") window=" << c.budgets.window
       << " steps_per_period=" << c.budgets.steps_per_period;
    if (sub == "circle-eigen") os << " omegas=" << c.circle.omega_samples;
  } else if (sub == "eigen-scan" || sub == "conjugacy") {
    os << " mode=" << c.scan.mode << " weight(" << c.gamma << "," << c.delta << ") annulus ("
       << c.scan.inner << "," << c.scan.outer << ") grid " << c.scan.radial << "x"
       << c.scan.angular << " window=" << c.budgets.window;
  } else if (sub == "spectrum") {
    os << " dims up to " << (c.spectrum.dims.empty() ? 0 : *std::max_element(c.spectrum.dims.begin(), c.spectrum.dims.end()))
       << " for " << c.spectrum.mus.size() << " multipliers, residual grid "
       << c.spectrum.residual_grid << "^2 at N=" << c.budgets.n;
  }
  return os.str();
}

int run_subcommand(const std::string& sub, const ExperimentConfig& c, const RunContext& ctx) {
  c.validate();
  if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end()) {
    throw Error(ErrorKind::Config, "unknown subcommand '" + sub + "'");
  }
  if (ctx.log) *ctx.log << plan(sub, c) << '\n';
  if (ctx.dry_run) return kExitPass;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory " + ctx.out_dir.string());

  if (sub == "norm-identity") return run_norm_identity(c, ctx);
  if (sub == "poisson-bounds") return run_poisson_bounds(c, ctx);
  if (sub == "orbit") return run_orbit(c, ctx);
  if (sub == "eigen-scan") return run_eigen_scan(c, ctx);
  if (sub == "circle-eigen") return run_circle_eigen(c, ctx);
  if (sub == "spectrum") return run_spectrum(c, ctx);
  return run_conjugacy(c, ctx);
}

}  // namespace hypcomp
