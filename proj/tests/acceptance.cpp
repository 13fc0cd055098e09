// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Each criterion is self-contained and uses pinned
// tolerances with comfortable margins over the observed behavior.

#include <cstdio>
#include <vector>

#include "nsk/bvp_oracle.hpp"
#include "nsk/evolution.hpp"
#include "nsk/verifier.hpp"

using namespace nsk;

namespace {

FluidParams set_a(int dim = 2) { return {1.0, 3.0, 1.0, 1.0, 0.0, 1.0, dim}; }
FluidParams set_b(int dim = 2) { return {1.0, 1.0, 2.0, 1.0, 0.0, 1.0, dim}; }

SectorPoint point(std::vector<double> xi, Complex lam) {
  SectorPoint pt;
  pt.xi_prime = std::move(xi);
  pt.lambda = lam;
  return pt;
}

// Sector with an angle valid for the given parameter set.
Sector sector_for(const DerivedConstants& c) {
  Sector sec;
  sec.epsilon = c.eps_tilde_star > 0.0 ? c.eps_tilde_star + 0.15 : 0.6;
  sec.lambda0 = 1.0;
  return sec;
}

int g_failures = 0;

void report(int idx, const char* name, bool pass, double metric) {
  std::printf("%s criterion %2d: %-34s (metric %.3e)\n", pass ? "PASS" : "FAIL", idx,
              name, metric);
  if (!pass) ++g_failures;
}

// --- 1: algebraic identity suite on 10^4 sector samples -------------------
void criterion_identities() {
  double worst = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto sec = sector_for(c);
    // Root-pair identities of the derived constants.
    worst = std::max(worst, std::abs(c.s1 * c.s2 - 1.0 / p.kappa));
    worst = std::max(worst, std::abs(c.s1 + c.s2 - (p.mu + p.nu) / p.kappa));

    SamplingSpec spec;
    spec.n_xi = 17;
    spec.n_mod = 17;
    spec.mod_min = 1.5;
    spec.n_arg = 18;  // 17*17*18 = 5202 points per parameter set
    for (const auto& pt : sector_sample(sec, spec)) {
      auto s = eval_symbols(pt, c, p);
      const double xi2 = pt.xi_norm2();
      const Complex lam = pt.lambda;
      auto rel = [](Complex gap, Complex scale) {
        return std::abs(gap) / std::max(1.0, std::abs(scale));
      };
      // omega^2 = |xi'|^2 + lambda / mu.
      worst = std::max(worst, rel(s.omega * s.omega - xi2 - lam / p.mu, lam));
      // t_1, t_2 are the root pair of (t^2 - xi^2 - s_1 lam)(t^2 - xi^2 - s_2 lam):
      // symmetric functions avoid any ordering ambiguity.
      const Complex e1 = s.t1 * s.t1 + s.t2 * s.t2 - 2.0 * xi2;
      const Complex e2 = (s.t1 * s.t1 - xi2) * (s.t2 * s.t2 - xi2);
      worst = std::max(worst, rel(e1 - (c.s1 + c.s2) * lam, lam));
      worst = std::max(worst, rel(e2 - lam * lam / p.kappa, lam * lam));
      // r_l = (t_l - omega) / (t2 - t1).
      worst = std::max(worst, rel(s.r1 - (s.t1 - s.omega) / (s.t2 - s.t1), s.r1));
      worst = std::max(worst, rel(s.r2 - (s.t2 - s.omega) / (s.t2 - s.t1), s.r2));
      // theta1 = (theta2^{(2)} - theta2^{(1)}) / (t2 - t1).
      const Complex w2x = s.omega * s.omega + xi2;
      const Complex th1 =
          c.s1 * c.s2 * s.t1 * s.t1 * (s.t1 + s.omega) * w2x / (p.mu * s.l1);
      const Complex th2 =
          c.s1 * c.s2 * s.t2 * s.t2 * (s.t2 + s.omega) * w2x / (p.mu * s.l2);
      worst = std::max(worst, rel(s.theta1 - (th2 - th1) / (s.t2 - s.t1), s.theta1));
    }
    // On the axis xi' = 0 the multiplier reduces to 1/lambda.
    for (Complex lam : {Complex(1.5, 0.0), Complex(2.0, 30.0), Complex(400.0, -100.0)}) {
      auto s = eval_symbols(point({0.0}, lam), c, p);
      worst = std::max(worst, std::abs(s.m_frak * lam - 1.0));
    }
  }
  report(1, "symbol identity suite", worst < 1e-9, worst);
}

// --- 2: mode residuals on 200+ samples per parameter set ------------------
void criterion_mode_residuals() {
  const std::vector<double> grid = {0.1, 0.5, 1.2, 2.5, 5.0};
  double worst = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto sec = sector_for(c);
    SamplingSpec spec;
    spec.n_xi = 6;
    spec.n_mod = 6;
    spec.mod_min = 1.5;
    spec.n_arg = 6;  // 216 samples
    for (const auto& pt : sector_sample(sec, spec)) {
      auto sol = solve_mode(pt, Complex(1.0, 0.3), p, c);
      worst = std::max(worst, residual_ode(sol, p, grid).max());
      worst = std::max(worst, residual_bc(sol, p).max());
    }
  }
  report(2, "mode residuals <= 1e-9", worst < 1e-9, worst);
}

// --- 3: independent collocation oracle + self-convergence -----------------
void criterion_oracle() {
  CollocationConfig cfg;
  double worst_gap = 0.0, worst_trunc = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto sec = sector_for(c);
    SamplingSpec spec;
    spec.n_xi = 3;
    spec.xi_min = 0.1;
    spec.xi_max = 5.0;
    spec.n_mod = 3;
    spec.mod_min = 1.5;
    spec.mod_max = 50.0;
    spec.n_arg = 3;  // 27 samples per set, 54 total
    for (const auto& pt : sector_sample(sec, spec)) {
      auto cmp = compare_with_formula(pt, Complex(1.0, 0.3), p, c, cfg);
      worst_gap = std::max(worst_gap, cmp.max());
      worst_trunc = std::max(worst_trunc, cmp.truncation_estimate);
    }
  }
  report(3, "oracle gap <= 1e-6, self-conv <= 1e-8",
         worst_gap < 1e-6 && worst_trunc < 1e-8, std::max(worst_gap, worst_trunc));
}

// --- 4: determinant lower bound over the full grid ------------------------
void criterion_det_bound() {
  double metric = 1e300;
  bool ok = true;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto rep = scan_lopatinskii_lower_bound(p, c, sector_for(c), DetScanGrid{});
    ok = ok && rep.pass && rep.min_ratio > 0.0;
    metric = std::min(metric, rep.min_ratio);
  }
  report(4, "determinant lower bound > 0", ok, metric);
}

// --- 5: high-frequency asymptotics improve at rate 1/lambda_0 -------------
void criterion_asymptotics() {
  bool ok = true;
  double metric = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto rep = check_high_frequency_asymptotics(p, c, sector_for(c).epsilon);
    ok = ok && rep.pass;
    for (size_t i = 0; i + 1 < rep.dev_t.size(); ++i)
      metric = std::max(metric, rep.dev_t[i] / rep.dev_t[i + 1]);
  }
  report(5, "asymptotic shrink in [8,32] per x16", ok, metric);
}

// --- 6: multiplier class memberships and the order-6 slope ----------------
void criterion_classes() {
  const std::vector<ClassSpec> specs = {
      {"omega", 1, 1.0, 1, 0, 2, 1}, {"t1", 1, 1.0, 1, 0, 2, 1},
      {"t2", 1, 1.0, 1, 0, 2, 1},    {"a", 1, 1.0, 1, 0, 2, 1},
      {"p1", 1, 1.0, 1, 0, 2, 1},    {"q1", 1, 1.0, 1, 0, 2, 1},
      {"l1", 1, 6.0, 1, 0, 2, 1},    {"l2", 1, 6.0, 1, 0, 2, 1},
      {"Minv", 1, -13.0, 1, -1, 2, 1}, {"m", 1, 0.0, 1, -1, 2, 1}};
  ClassScanGrid grid;
  bool ok = true;
  double slope_dev = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto sec = sector_for(c);
    for (const auto& s : specs) ok = ok && verify_class_membership(s, sec, grid, p, c).pass;
    for (const char* id : {"l1", "l2"}) {
      const double dev = std::abs(symbol_loglog_slope(id, 1, sec, grid, p, c) - 6.0);
      slope_dev = std::max(slope_dev, dev);
    }
  }
  report(6, "class scans pass, slope = 6 +- 0.1", ok && slope_dev < 0.1, slope_dev);
}

// --- 7: cancellation-safe kernels near root coalescence -------------------
void criterion_kernels() {
  auto p = set_a();
  auto c = derive_constants(p);
  using LD = std::complex<long double>;
  double worst = 0.0;
  for (double eps : {1e-6, 1e-8, 1e-10}) {
    auto S = eval_symbol_set<Complex>(Complex(1.0, 0.0), Complex(eps, 0.0), p, c);
    auto SL = eval_symbol_set<LD>(LD(1.0L, 0.0L), LD((long double)eps, 0.0L), p, c);
    for (double x : {0.1, 1.0, 5.0}) {
      for (Kernel k : {Kernel::M0, Kernel::M1, Kernel::M2}) {
        const Complex v = eval_kernel(S, k, x);
        const LD vl = eval_kernel(SL, k, x);
        const long double scale = std::max(std::abs(vl), (long double)1e-30);
        worst = std::max(worst, (double)(std::abs(LD(v.real(), v.imag()) - vl) / scale));
      }
    }
  }
  report(7, "kernel cancellation <= 1e-9", worst < 1e-9, worst);
}

// --- 8: physical-space field solve ----------------------------------------
void criterion_field() {
  auto p = set_a();
  auto c = derive_constants(p);
  FieldGrid g;
  g.modes = 32;
  const size_t M = mode_count(g);

  // (a) single-mode diagnostic against the per-mode solution.
  std::vector<Complex> mono(M);
  for (size_t j = 0; j < M; ++j)
    mono[j] = std::exp(Complex(0.0, 2.0 * (2.0 * M_PI * (double)j / (double)M)));
  auto sol1 = solve_field(mono, Complex(2.0, 1.5), p, c, g);
  auto ms = solve_mode(point({2.0 * 2.0 * M_PI / g.period}, Complex(2.0, 1.5)), Complex(1.0, 0.0), p, c);
  double diag = 0.0;
  for (size_t j = 0; j < M; ++j) {
    const Complex phase = mono[j];
    diag = std::max(diag, std::abs(sol1.h[j] - ms.h0 * phase));
    diag = std::max(diag, std::abs(sol1.rho[0][j] - ms.rho_hat.eval(ms.symbols, 0.0) * phase));
  }

  // (b) localized data: residual, Parseval, and the resolvent quotient
  // across lambda samples in the sector.
  std::vector<Complex> eta(M);
  for (size_t j = 0; j < M; ++j) {
    const double x1 = g.period * (double)j / (double)M - g.period / 2.0;
    eta[j] = std::exp(-4.0 * x1 * x1);
  }
  double res = 0.0, pars = 0.0, qmin = 1e300, qmax = 0.0;
  const double dnorm = data_norm_h2(eta, g);
  for (Complex lam : {Complex(1.5, 0.0), Complex(2.0, 8.0), Complex(30.0, -40.0),
                      Complex(3.0, 120.0), Complex(250.0, 90.0)}) {
    auto sol = solve_field(eta, lam, p, c, g);
    res = std::max(res, residual_field(sol, p).max());
    pars = std::max(pars, parseval_gap(sol));
    const double q = compute_norms(sol).sum() / dnorm;
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  const bool ok = diag < 1e-10 && res < 1e-8 && pars < 1e-10 && qmax / qmin < 100.0;
  report(8, "field diag/residual/Parseval/quotient", ok,
         std::max({diag, res, pars}));
}

// --- 9: quadrature route against the closed form --------------------------
void criterion_volevich() {
  double worst_id = 0.0, worst_path = 0.0;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps(2);
    auto c = derive_constants(p);
    auto pt = point({0.7}, Complex(2.0, 1.5));
    auto sym = eval_symbols(pt, c, p);
    const Complex eta0(1.0, 0.3);
    auto eta = [&](double y) { return eta0 * std::exp(-y) * (1.0 + y); };
    auto deta = [&](double y) { return eta0 * std::exp(-y) * (-y); };
    for (Kernel k : {Kernel::ExpOmega, Kernel::ExpT1, Kernel::ExpT2, Kernel::M0,
                     Kernel::M1, Kernel::M2})
      for (double x : {0.0, 0.5, 2.0})
        worst_id = std::max(worst_id, check_volevich_identity(sym, k, x, eta, deta));

    const std::vector<double> xs = {0.0, 0.3, 1.0, 2.5};
    auto vs = solve_mode_volevich(pt, eta, deta, xs, p, c, 1e-11);
    auto msol = solve_mode(pt, eta0, p, c);
    worst_path = std::max(worst_path, std::abs(vs.h0 - msol.h0));
    for (size_t i = 0; i < xs.size(); ++i) {
      worst_path =
          std::max(worst_path, std::abs(vs.rho[i] - msol.rho_hat.eval(msol.symbols, xs[i])));
      for (size_t J = 0; J < 2; ++J)
        worst_path = std::max(
            worst_path, std::abs(vs.u[J][i] - msol.u_hat[J].eval(msol.symbols, xs[i])));
    }
  }
  report(9, "duality identity and path agreement",
         worst_id < 1e-8 && worst_path < 1e-6, std::max(worst_id, worst_path));
}

// --- 10: time evolution ----------------------------------------------------
void criterion_evolution() {
  auto p = set_a();
  auto c = derive_constants(p);
  EvolutionConfig cfg;
  cfg.xi_prime = {0.7};
  cfg.gamma = 1.5;
  cfg.horizon = 16.0;
  cfg.time_samples = 4096;
  const double t0 = cfg.horizon / 4.0, decay = 1.5;
  auto zeta = [t0, decay](double t) -> Complex {
    if (t <= t0) return Complex(0.0, 0.0);
    const double s = t - t0;
    return Complex(s * s * std::exp(-decay * s), 0.0);
  };

  // Zero forcing and causality.
  auto zero = evolve_boundary_forced(cfg, [](double) { return Complex(0.0, 0.0); }, p, c);
  double zmax = 0.0;
  for (const auto& v : zero.h) zmax = std::max(zmax, std::abs(v));

  auto traj = evolve_boundary_forced(cfg, zeta, p, c);
  double pre = 0.0, post = 0.0;
  for (size_t k = 0; k < traj.t.size(); ++k) {
    const double a = std::abs(traj.h[k]);
    if (traj.t[k] < t0 - 0.25)
      pre = std::max(pre, a);
    else if (traj.t[k] < cfg.horizon / 2.0)
      post = std::max(post, a);
  }
  const double causality = pre / std::max(post, 1e-300);

  // Single-time contour oracle.
  auto zhat = [t0, decay](Complex lam) {
    const Complex d = decay + lam;
    return std::exp(-lam * t0) * 2.0 / (d * d * d);
  };
  double oracle_gap = 0.0;
  const size_t K = traj.t.size();
  for (double frac : {0.3, 0.45}) {
    const size_t k = (size_t)std::llround(frac * (double)K);
    const double ref = bromwich_point(zhat, traj.t[k], cfg.gamma, cfg.xi_prime, p, c);
    oracle_gap = std::max(oracle_gap,
                          std::abs(traj.h[k].real() - ref) / std::max(1e-3, std::abs(ref)));
  }

  // Contour independence and the regularity quotient spread.
  const double contour = contour_independence_gap(cfg, zeta, p, c, 1.25);
  std::vector<TimeSignal> signals = {
      zeta,
      [](double t) { return Complex(std::exp(-t) * std::sin(2.0 * t), 0.0); },
      [t0](double t) {
        if (t <= 0.5 * t0) return Complex(0.0, 0.0);
        const double s = t - 0.5 * t0;
        return Complex(s * s * s * std::exp(-0.8 * s), 0.0);
      }};
  double rmin = 1e300, rmax = 0.0;
  for (const auto& sig : signals) {
    auto tr = evolve_boundary_forced(cfg, sig, p, c);
    auto mr = maximal_regularity_ratio(tr, p, c);
    rmin = std::min(rmin, mr.ratio);
    rmax = std::max(rmax, mr.ratio);
  }

  const bool ok = zmax < 1e-4 && causality < 1e-4 && oracle_gap < 1e-5 &&
                  contour < 1e-4 && rmax / rmin < 10.0;
  report(10, "evolution: zero/causal/oracle/contour/MR", ok,
         std::max({zmax, causality, oracle_gap, contour}));
}

}  // namespace

int main() {
  criterion_identities();
  criterion_mode_residuals();
  criterion_oracle();
  criterion_det_bound();
  criterion_asymptotics();
  criterion_classes();
  criterion_kernels();
  criterion_field();
  criterion_volevich();
  criterion_evolution();
  if (g_failures) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 10 criteria passed\n");
  return 0;
}
