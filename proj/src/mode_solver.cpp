#include "nsk/mode_solver.hpp"

#include <algorithm>
#include <cmath>

namespace nsk {

double OdeResidualReport::max() const {
  return std::max({mass, momentum_tangential, momentum_normal});
}

double BcResidualReport::max() const {
  return std::max({tangential_stress, normal_stress, neumann, kinematic});
}

ModeSolution solve_mode(const SectorPoint& pt, Complex eta0, const FluidParams& p,
                        const DerivedConstants& c) {
  const int N = static_cast<int>(pt.xi_prime.size()) + 1;
  ModeSolution sol;
  sol.point = pt;
  sol.eta0 = eta0;
  sol.u_hat.assign(static_cast<size_t>(N), ExpProfile{});

  const double xi2 = pt.xi_norm2();
  if (xi2 == 0.0) {
    // The surface-tension coupling carries a factor |xi'|^2, so the fields
    // vanish and the kinematic condition reduces to lambda h0 = eta0.
    sol.decoupled = true;
    sol.h0 = eta0 / pt.lambda;
    sol.symbols = ModeSymbols{};
    return sol;
  }

  sol.symbols = eval_symbols(pt, c, p);
  const ModeSymbols& S = sol.symbols;
  sol.h0 = S.m_frak * eta0;

  const Complex amp = p.sigma * xi2 * S.m_frak * eta0;
  sol.rho_hat.c[0] = amp * S.theta1;   // e^{-t1 x}
  sol.rho_hat.c[3] = -amp * S.theta2;  // M0
  for (int J = 0; J < N; ++J) {
    auto& u = sol.u_hat[static_cast<size_t>(J)];
    u.c[2] = amp * S.nJ1[static_cast<size_t>(J)];      // e^{-om x}
    u.c[4] = amp * S.nJ2[static_cast<size_t>(J)][0];   // M1
    u.c[5] = amp * S.nJ2[static_cast<size_t>(J)][1];   // M2
  }
  return sol;
}

namespace {

double solution_scale(const ModeSolution& sol) {
  double s = sol.rho_hat.max_coeff();
  for (const auto& u : sol.u_hat) s = std::max(s, u.max_coeff());
  return std::max(1.0, std::abs(sol.point.lambda) * s);
}

}  // namespace

OdeResidualReport residual_ode(const ModeSolution& sol, const FluidParams& p,
                               const std::vector<double>& grid) {
  OdeResidualReport rep;
  if (sol.decoupled || (sol.rho_hat.is_zero() && sol.eta0 == Complex(0.0, 0.0))) {
    // Zero fields solve the homogeneous interior equations exactly.
    bool all_zero = sol.rho_hat.is_zero();
    for (const auto& u : sol.u_hat) all_zero = all_zero && u.is_zero();
    if (all_zero) return rep;
  }
  const ModeSymbols& S = sol.symbols;
  const Complex lam = sol.point.lambda;
  const double xi2 = sol.point.xi_norm2();
  const int N = static_cast<int>(sol.u_hat.size());
  const Complex I(0.0, 1.0);
  const double scale = solution_scale(sol);

  // Divergence profile: phi = sum_j i xi_j u_j + dN u_N.
  ExpProfile phi;
  for (int j = 0; j < N - 1; ++j)
    phi += sol.u_hat[static_cast<size_t>(j)] * (I * sol.point.xi_prime[static_cast<size_t>(j)]);
  phi += differentiate_profile(sol.u_hat[static_cast<size_t>(N - 1)], S);

  ExpProfile drho = differentiate_profile(sol.rho_hat, S);
  ExpProfile d2rho = differentiate_profile(drho, S);
  ExpProfile d3rho = differentiate_profile(d2rho, S);
  ExpProfile dphi = differentiate_profile(phi, S);

  std::vector<ExpProfile> d2u(static_cast<size_t>(N));
  for (int J = 0; J < N; ++J)
    d2u[static_cast<size_t>(J)] = differentiate_profile(sol.u_hat[static_cast<size_t>(J)], S, 2);

  for (double x : grid) {
    // mass: lambda rho + phi
    rep.mass = std::max(rep.mass,
        std::abs(lam * sol.rho_hat.eval(S, x) + phi.eval(S, x)) / scale);
    const Complex lap_rho = d2rho.eval(S, x) - xi2 * sol.rho_hat.eval(S, x);
    for (int j = 0; j < N - 1; ++j) {
      const Complex ixj = I * sol.point.xi_prime[static_cast<size_t>(j)];
      const auto& u = sol.u_hat[static_cast<size_t>(j)];
      const Complex lap_u = d2u[static_cast<size_t>(j)].eval(S, x) - xi2 * u.eval(S, x);
      const Complex res = lam * u.eval(S, x) - p.mu * lap_u - p.nu * ixj * phi.eval(S, x)
          + p.gamma_star * ixj * sol.rho_hat.eval(S, x) - p.kappa * ixj * lap_rho;
      rep.momentum_tangential = std::max(rep.momentum_tangential, std::abs(res) / scale);
    }
    const auto& uN = sol.u_hat[static_cast<size_t>(N - 1)];
    const Complex lap_uN = d2u[static_cast<size_t>(N - 1)].eval(S, x) - xi2 * uN.eval(S, x);
    const Complex dlap_rho = d3rho.eval(S, x) - xi2 * drho.eval(S, x);
    const Complex resN = lam * uN.eval(S, x) - p.mu * lap_uN - p.nu * dphi.eval(S, x)
        + p.gamma_star * drho.eval(S, x) - p.kappa * dlap_rho;
    rep.momentum_normal = std::max(rep.momentum_normal, std::abs(resN) / scale);
  }
  return rep;
}

BcResidualReport residual_bc(const ModeSolution& sol, const FluidParams& p) {
  BcResidualReport rep;
  const Complex lam = sol.point.lambda;
  if (sol.decoupled) {
    rep.kinematic = std::abs(lam * sol.h0 - sol.eta0);
    return rep;
  }
  const ModeSymbols& S = sol.symbols;
  const double xi2 = sol.point.xi_norm2();
  const int N = static_cast<int>(sol.u_hat.size());
  const Complex I(0.0, 1.0);
  const double scale = solution_scale(sol);

  ExpProfile phi;
  for (int j = 0; j < N - 1; ++j)
    phi += sol.u_hat[static_cast<size_t>(j)] * (I * sol.point.xi_prime[static_cast<size_t>(j)]);
  const auto& uN = sol.u_hat[static_cast<size_t>(N - 1)];
  ExpProfile duN = differentiate_profile(uN, S);
  phi += duN;

  for (int j = 0; j < N - 1; ++j) {
    const auto& uj = sol.u_hat[static_cast<size_t>(j)];
    const Complex res = p.mu * (I * sol.point.xi_prime[static_cast<size_t>(j)] * uN.eval(S, 0.0)
        + differentiate_profile(uj, S).eval(S, 0.0));
    rep.tangential_stress = std::max(rep.tangential_stress, std::abs(res) / scale);
  }
  ExpProfile drho = differentiate_profile(sol.rho_hat, S);
  ExpProfile d2rho = differentiate_profile(drho, S);
  const Complex normal = 2.0 * p.mu * duN.eval(S, 0.0) + (p.nu - p.mu) * phi.eval(S, 0.0)
      - p.gamma_star * sol.rho_hat.eval(S, 0.0)
      + p.kappa * (d2rho.eval(S, 0.0) - xi2 * sol.rho_hat.eval(S, 0.0))
      + p.sigma * xi2 * sol.h0;
  rep.normal_stress = std::abs(normal) / scale;
  rep.neumann = std::abs(drho.eval(S, 0.0)) / scale;
  rep.kinematic = std::abs(lam * sol.h0 + uN.eval(S, 0.0) - sol.eta0) / scale;
  return rep;
}

// ---------------------------------------------------------------------------
// Quadrature.

namespace {

Complex simpson(const std::function<Complex(double)>& f, double a, double b,
                Complex fa, Complex fm, Complex fb, double tol, int depth,
                double* err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Complex flm = f(lm), frm = f(rm);
  const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    if (err) *err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1, err)
      + simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1, err);
}

}  // namespace

Complex integrate_halfline(const std::function<Complex(double)>& f, double decay,
                           double tol, double* err_estimate) {
  // Truncate where e^{-decay * Y} is negligible, then integrate adaptively in
  // doubling panels so short-scale structure near zero is resolved.
  const double Y = std::max(1.0, 40.0 / std::max(decay, 1e-8));
  double a = 0.0;
  double h = std::min(1.0, Y);
  Complex total(0.0, 0.0);
  double err = 0.0;
  while (a < Y) {
    const double b = std::min(a + h, Y);
    const double m = 0.5 * (a + b);
    total += simpson(f, a, b, f(a), f(m), f(b), tol * (b - a) / Y, 48, &err);
    a = b;
    h *= 2.0;
  }
  if (err_estimate) *err_estimate = err;
  return total;
}

namespace {

// -kernel'(x+y) as an ExpProfile-free closed form, from the derivative
// identities; returns a callable in y for fixed x.
std::function<Complex(double)> neg_kernel_derivative(const ModeSymbols& S, Kernel kind,
                                                     double x) {
  switch (kind) {
    case Kernel::ExpT1:
      return [&S, x](double y) { return S.t1 * eval_kernel(S, Kernel::ExpT1, x + y); };
    case Kernel::ExpT2:
      return [&S, x](double y) { return S.t2 * eval_kernel(S, Kernel::ExpT2, x + y); };
    case Kernel::ExpOmega:
      return [&S, x](double y) { return S.omega * eval_kernel(S, Kernel::ExpOmega, x + y); };
    case Kernel::M0:
      return [&S, x](double y) {
        return S.t2 * eval_kernel(S, Kernel::M0, x + y) + eval_kernel(S, Kernel::ExpT1, x + y);
      };
    case Kernel::M1:
      return [&S, x](double y) {
        return S.t1 * eval_kernel(S, Kernel::M1, x + y)
            + S.r1 * eval_kernel(S, Kernel::ExpOmega, x + y);
      };
    case Kernel::M2:
      return [&S, x](double y) {
        return S.t2 * eval_kernel(S, Kernel::M2, x + y)
            + S.r2 * eval_kernel(S, Kernel::ExpOmega, x + y);
      };
  }
  throw SymbolError("neg_kernel_derivative: bad kind");
}

double min_decay(const ModeSymbols& S) {
  return std::min({S.t1.real(), S.t2.real(), S.omega.real()});
}

// Volevich value of one basis kernel: integral replacing kernel(x)*eta(0).
Complex volevich_kernel_value(const ModeSymbols& S, Kernel kind, double x,
                              const ScalarProfileFn& eta, const ScalarProfileFn& deta,
                              double tol, double* err) {
  auto negdk = neg_kernel_derivative(S, kind, x);
  auto integrand = [&](double y) {
    return negdk(y) * eta(y) - eval_kernel(S, kind, x + y) * deta(y);
  };
  return integrate_halfline(integrand, min_decay(S), tol, err);
}

}  // namespace

double check_volevich_identity(const ModeSymbols& sym, Kernel kind, double x,
                               const ScalarProfileFn& eta, const ScalarProfileFn& deta,
                               double tol) {
  const Complex lhs = eval_kernel(sym, kind, x) * eta(0.0);
  const Complex rhs = volevich_kernel_value(sym, kind, x, eta, deta, tol, nullptr);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

VolevichSolution solve_mode_volevich(const SectorPoint& pt, const ScalarProfileFn& eta,
                                     const ScalarProfileFn& deta,
                                     const std::vector<double>& x_nodes,
                                     const FluidParams& p, const DerivedConstants& c,
                                     double tol) {
  const int N = static_cast<int>(pt.xi_prime.size()) + 1;
  VolevichSolution out;
  out.x_nodes = x_nodes;
  out.u.assign(static_cast<size_t>(N), std::vector<Complex>(x_nodes.size()));
  out.rho.assign(x_nodes.size(), Complex(0.0, 0.0));

  const ModeSymbols S = eval_symbols(pt, c, p);
  const double xi2 = pt.xi_norm2();
  const Complex amp = p.sigma * xi2 * S.m_frak;  // eta(0) handled by quadrature

  // Trace via the exponential identity with Z = omega: eta(0) =
  // int Z e^{-Z y} eta - e^{-Z y} eta' dy.
  double err = 0.0, e1 = 0.0;
  const Complex eta0_q = volevich_kernel_value(S, Kernel::ExpOmega, 0.0, eta, deta, tol, &e1);
  err += e1;
  out.h0 = S.m_frak * eta0_q;

  // Coefficient layout matches solve_mode: rho on {ExpT1, M0}, u on
  // {ExpOmega, M1, M2}.
  for (size_t ix = 0; ix < x_nodes.size(); ++ix) {
    const double x = x_nodes[ix];
    double e = 0.0;
    const Complex k_t1 = volevich_kernel_value(S, Kernel::ExpT1, x, eta, deta, tol, &e);
    const Complex k_m0 = volevich_kernel_value(S, Kernel::M0, x, eta, deta, tol, &e);
    const Complex k_om = volevich_kernel_value(S, Kernel::ExpOmega, x, eta, deta, tol, &e);
    const Complex k_m1 = volevich_kernel_value(S, Kernel::M1, x, eta, deta, tol, &e);
    const Complex k_m2 = volevich_kernel_value(S, Kernel::M2, x, eta, deta, tol, &e);
    err = std::max(err, e);
    out.rho[ix] = amp * (S.theta1 * k_t1 - S.theta2 * k_m0);
    for (int J = 0; J < N; ++J) {
      out.u[static_cast<size_t>(J)][ix] = amp * (S.nJ1[static_cast<size_t>(J)] * k_om
          + S.nJ2[static_cast<size_t>(J)][0] * k_m1
          + S.nJ2[static_cast<size_t>(J)][1] * k_m2);
    }
  }
  out.quad_error_estimate = err;
  return out;
}

}  // namespace nsk
