#include "nsk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsk {

namespace {

int freq_index(int k, int K) { return k <= K / 2 ? k : k - K; }

double window_value(double tau, double tau_max, double fraction) {
  const double cutoff = (1.0 - fraction) * tau_max;
  const double a = std::abs(tau);
  if (a <= cutoff) return 1.0;
  if (a >= tau_max) return 0.0;
  return 0.5 * (1.0 + std::cos(M_PI * (a - cutoff) / (tau_max - cutoff)));
}

// Sobolev norm squared of one mode profile, integer order s.
double mode_hs_norm2(const ExpProfile& f, const ModeSymbols& sym,
                     const std::vector<double>& xi_prime, int s) {
  double out = 0.0;
  for (int m = 0; m <= s; ++m) out += mode_grad_norm2(f, sym, xi_prime, m);
  return out;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

Trajectory evolve_boundary_forced(const EvolutionConfig& cfg, const TimeSignal& zeta,
                                  const FluidParams& p, const DerivedConstants& c) {
  const int K = cfg.time_samples;
  if (!is_pow2(static_cast<size_t>(K)))
    throw std::invalid_argument("evolve: time_samples must be a power of two");
  if (!(cfg.gamma > 0.0))
    throw std::invalid_argument("evolve: gamma must be positive");
  const double T = cfg.horizon;
  const double dt = T / K;

  Trajectory traj;
  traj.config = cfg;
  traj.t.resize(K);
  traj.zeta.resize(K);
  std::vector<Complex> damped(K);
  for (int k = 0; k < K; ++k) {
    traj.t[k] = k * dt;
    traj.zeta[k] = zeta(traj.t[k]);
    damped[k] = std::exp(-cfg.gamma * traj.t[k]) * traj.zeta[k];
  }
  fft_inplace(damped, false);
  const double tau_max = M_PI * K / T;
  traj.zeta_hat.resize(K);
  traj.lambda_nodes.resize(K);
  traj.h_hat.resize(K);
  for (int j = 0; j < K; ++j) {
    const double tau = 2.0 * M_PI * freq_index(j, K) / T;
    traj.lambda_nodes[j] = Complex(cfg.gamma, tau);
    traj.zeta_hat[j] = dt * damped[j] * window_value(tau, tau_max, cfg.window_fraction);
    SectorPoint pt;
    pt.xi_prime = cfg.xi_prime;
    pt.lambda = traj.lambda_nodes[j];
    traj.h_hat[j] = solve_mode(pt, traj.zeta_hat[j], p, c).h0;
  }
  std::vector<Complex> back = traj.h_hat;
  fft_inplace(back, true);
  traj.h.resize(K);
  for (int k = 0; k < K; ++k)
    traj.h[k] = std::exp(cfg.gamma * traj.t[k]) * back[k] / dt;
  return traj;
}

double bromwich_point(const std::function<Complex(Complex)>& zeta_hat, double t,
                      double gamma, const std::vector<double>& xi_prime,
                      const FluidParams& p, const DerivedConstants& c,
                      double tol, double tau_max) {
  auto integrand = [&](double tau) {
    SectorPoint pt;
    pt.xi_prime = xi_prime;
    pt.lambda = Complex(gamma, tau);
    const Complex h0 = solve_mode(pt, zeta_hat(pt.lambda), p, c).h0;
    return (std::exp(Complex(gamma, tau) * t) * h0).real() / M_PI;
  };
  // Dyadic panels resolve the oscillation near tau = 0 without wasting
  // evaluations in the polynomially decaying tail. The e^{gamma t} factor
  // inflates the integrand uniformly, so the per-panel tolerance is scaled
  // down by it to keep the requested accuracy on the final value.
  const double panel_tol = tol * std::exp(-gamma * t);
  double total = integrate_interval(integrand, 0.0, 1.0, panel_tol);
  for (double a = 1.0; a < tau_max; a *= 2.0) {
    const double b = std::min(2.0 * a, tau_max);
    total += integrate_interval(integrand, a, b, panel_tol);
  }
  return total;
}

MaximalRegularityReport maximal_regularity_ratio(const Trajectory& traj,
                                                 const FluidParams& p,
                                                 const DerivedConstants& c) {
  const double T = traj.config.horizon;
  const double w = 1.0 / T;  // d tau / (2 pi) on the uniform contour grid
  double xi2 = 0.0;
  for (double v : traj.config.xi_prime) xi2 += v * v;

  // One accumulator per norm in the solution-side tuple.
  double rho_dt = 0.0;
  std::array<double, 4> rho_lam{};   // |lambda|^{j/2} rho in H^{3-j}
  double u_dt = 0.0;
  std::array<double, 3> u_lam{};     // |lambda|^{j/2} u in H^{2-j}
  double h_dt = 0.0, h_25 = 0.0;
  double rhs2 = 0.0;

  for (size_t j = 0; j < traj.lambda_nodes.size(); ++j) {
    const Complex lam = traj.lambda_nodes[j];
    const double al = std::abs(lam);
    const double z2 = std::norm(traj.zeta_hat[j]);
    rhs2 += w * std::pow(1.0 + xi2, 1.5) * z2;
    SectorPoint pt;
    pt.xi_prime = traj.config.xi_prime;
    pt.lambda = lam;
    const ModeSolution m = solve_mode(pt, traj.zeta_hat[j], p, c);
    const double h2 = std::norm(m.h0);
    h_dt += w * al * al * std::pow(1.0 + xi2, 1.5) * h2;
    h_25 += w * std::pow(1.0 + xi2, 2.5) * h2;
    if (m.decoupled) continue;
    rho_dt += w * al * al * mode_hs_norm2(m.rho_hat, m.symbols, pt.xi_prime, 1);
    for (int d = 0; d <= 3; ++d)
      rho_lam[d] += w * std::pow(al, d) *
          mode_hs_norm2(m.rho_hat, m.symbols, pt.xi_prime, 3 - d);
    for (const auto& uj : m.u_hat) {
      u_dt += w * al * al * mode_grad_norm2(uj, m.symbols, pt.xi_prime, 0);
      for (int d = 0; d <= 2; ++d)
        u_lam[d] += w * std::pow(al, d) *
            mode_hs_norm2(uj, m.symbols, pt.xi_prime, 2 - d);
    }
  }

  MaximalRegularityReport rep;
  rep.lhs = std::sqrt(rho_dt) + std::sqrt(u_dt) + std::sqrt(h_dt) + std::sqrt(h_25);
  for (double v : rho_lam) rep.lhs += std::sqrt(v);
  for (double v : u_lam) rep.lhs += std::sqrt(v);
  rep.rhs = std::sqrt(rhs2);
  rep.ratio = rep.lhs / std::max(rep.rhs, 1e-300);
  return rep;
}

double contour_independence_gap(const EvolutionConfig& cfg, const TimeSignal& zeta,
                                const FluidParams& p, const DerivedConstants& c,
                                double factor) {
  EvolutionConfig alt = cfg;
  alt.gamma = cfg.gamma * factor;
  const Trajectory a = evolve_boundary_forced(cfg, zeta, p, c);
  const Trajectory b = evolve_boundary_forced(alt, zeta, p, c);
  // The e^{gamma t} factor amplifies spectrum truncation error near t = T,
  // so only the first half of the horizon is compared.
  const double lo = cfg.horizon / 8.0, hi = cfg.horizon / 2.0;
  double gap = 0.0, scale = 0.0;
  for (size_t k = 0; k < a.t.size(); ++k) {
    if (a.t[k] < lo || a.t[k] > hi) continue;
    gap = std::max(gap, std::abs(a.h[k] - b.h[k]));
    scale = std::max(scale, std::abs(a.h[k]));
  }
  return gap / std::max(scale, 1e-300);
}

}  // namespace nsk
