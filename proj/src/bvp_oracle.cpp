#include "nsk/bvp_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace nsk {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Chebyshev-Lobatto nodes on [0, L], increasing, with the spectral
// differentiation matrix (Trefethen's construction mapped from [-1, 1]).
void chebyshev(int M, double L, std::vector<double>& x, Mat& D) {
  x.resize(static_cast<size_t>(M));
  Eigen::MatrixXd Dm(M, M);
  std::vector<double> t(static_cast<size_t>(M)), cw(static_cast<size_t>(M));
  for (int i = 0; i < M; ++i) {
    // s runs 1 -> -1; flip so x increases from 0 to L.
    t[static_cast<size_t>(i)] = std::cos(M_PI * i / (M - 1));
    cw[static_cast<size_t>(i)] = (i == 0 || i == M - 1) ? 2.0 : 1.0;
    if (i % 2 == 1) cw[static_cast<size_t>(i)] = -cw[static_cast<size_t>(i)];
  }
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (i != j) {
        Dm(i, j) = (cw[static_cast<size_t>(i)] / cw[static_cast<size_t>(j)])
            / (t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)]);
      }
    }
  for (int i = 0; i < M; ++i) {
    double s = 0.0;
    for (int j = 0; j < M; ++j)
      if (i != j) s += Dm(i, j);
    Dm(i, i) = -s;
  }
  // Map s in [1, -1] to x = L (1 - s)/2; s decreases along i, so x already
  // increases and only the -(2/L) chain-rule factor is needed.
  D.resize(M, M);
  for (int i = 0; i < M; ++i) {
    x[static_cast<size_t>(i)] = L * (1.0 - t[static_cast<size_t>(i)]) / 2.0;
    for (int j = 0; j < M; ++j)
      D(i, j) = Complex(-2.0 / L * Dm(i, j), 0.0);
  }
}

double default_length(const SectorPoint& pt, const FluidParams& p,
                      const DerivedConstants& c) {
  bool pos = true;
  auto roots = eval_roots(pt, c, p, &pos);
  double beta = std::min({roots[0].real(), roots[1].real(), roots[2].real()});
  if (!(beta > 0.0)) throw OracleError("solve_general_mode: nonpositive decay rate");
  return 24.0 / beta;
}

// Node count resolving both the x = 0 layer of the fastest root and the
// oscillation of the slowest one over the whole domain: when the decay
// rates are far apart (near the sector edge) L |t|_max grows and a fixed
// count under-resolves, so scale with it. cfg.num_nodes acts as a floor.
int effective_nodes(int base, double L, const SectorPoint& pt, const FluidParams& p,
                    const DerivedConstants& c) {
  auto roots = eval_roots(pt, c, p);
  double maxmod = 0.0;
  for (const auto& r : roots) maxmod = std::max(maxmod, std::abs(r));
  const double needed = 0.75 * L * maxmod;
  return std::min(512, std::max(base, static_cast<int>(std::ceil(needed))));
}

OracleSolution solve_once(const SectorPoint& pt, const GeneralModeRHS& rhs,
                          const FluidParams& p, int M, double L, double cond_limit) {
  const int N = static_cast<int>(pt.xi_prime.size()) + 1;
  const double xi2 = pt.xi_norm2();
  const Complex lam = pt.lambda;
  const Complex I(0.0, 1.0);

  std::vector<double> x;
  Mat D;
  chebyshev(M, L, x, D);
  Mat D2 = D * D;
  Mat D3 = D2 * D;

  // Unknowns: rho (M), u_0..u_{N-1} (M each), h0. Block offsets:
  const int n_unknowns = (N + 1) * M + 1;
  auto rho_at = [&](int i) { return i; };
  auto u_at = [&](int J, int i) { return (J + 1) * M + i; };
  const int h_at = (N + 1) * M;

  Mat A = Mat::Zero(n_unknowns, n_unknowns);
  Vec b = Vec::Zero(n_unknowns);
  int row = 0;

  auto d_val = [&](double xv) { return rhs.d_hat ? rhs.d_hat(xv) : Complex(0.0, 0.0); };
  auto f_val = [&](int J, double xv) {
    if (rhs.f_hat.empty() || !rhs.f_hat[static_cast<size_t>(J)]) return Complex(0.0, 0.0);
    return rhs.f_hat[static_cast<size_t>(J)](xv);
  };

  // Interior equations at nodes 1..M-2.
  for (int i = 1; i <= M - 2; ++i) {
    // mass: lam rho + sum_j i xi_j u_j + D u_N = d
    A(row, rho_at(i)) += lam;
    for (int j = 0; j < N - 1; ++j)
      A(row, u_at(j, i)) += I * pt.xi_prime[static_cast<size_t>(j)];
    for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) += D(i, k);
    b(row) = d_val(x[static_cast<size_t>(i)]);
    ++row;

    // tangential momentum j: lam u_j - mu (D2 - xi2) u_j - nu i xi_j phi
    //   + gamma_star i xi_j rho - kappa i xi_j (D2 - xi2) rho = f_j
    for (int j = 0; j < N - 1; ++j) {
      const Complex ixj = I * pt.xi_prime[static_cast<size_t>(j)];
      A(row, u_at(j, i)) += lam + p.mu * xi2;
      for (int k = 0; k < M; ++k) A(row, u_at(j, k)) -= p.mu * D2(i, k);
      for (int l = 0; l < N - 1; ++l)
        A(row, u_at(l, i)) -= p.nu * ixj * I * pt.xi_prime[static_cast<size_t>(l)];
      for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) -= p.nu * ixj * D(i, k);
      A(row, rho_at(i)) += p.gamma_star * ixj + p.kappa * ixj * xi2;
      for (int k = 0; k < M; ++k) A(row, rho_at(k)) -= p.kappa * ixj * D2(i, k);
      b(row) = f_val(j, x[static_cast<size_t>(i)]);
      ++row;
    }

    // normal momentum: lam u_N - mu (D2 - xi2) u_N - nu D phi
    //   + gamma_star D rho - kappa D (D2 - xi2) rho = f_N
    A(row, u_at(N - 1, i)) += lam + p.mu * xi2;
    for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) -= p.mu * D2(i, k);
    for (int l = 0; l < N - 1; ++l)
      for (int k = 0; k < M; ++k)
        A(row, u_at(l, k)) -= p.nu * D(i, k) * I * pt.xi_prime[static_cast<size_t>(l)];
    for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) -= p.nu * D2(i, k);
    for (int k = 0; k < M; ++k)
      A(row, rho_at(k)) += p.gamma_star * D(i, k) - p.kappa * (D3(i, k) - xi2 * D(i, k));
    b(row) = f_val(N - 1, x[static_cast<size_t>(i)]);
    ++row;
  }

  // Boundary rows at x = 0 (node 0).
  for (int j = 0; j < N - 1; ++j) {  // tangential stress
    const Complex ixj = I * pt.xi_prime[static_cast<size_t>(j)];
    for (int k = 0; k < M; ++k) A(row, u_at(j, k)) += p.mu * D(0, k);
    A(row, u_at(N - 1, 0)) += p.mu * ixj;
    b(row) = rhs.g_hat0.empty() ? Complex(0.0, 0.0) : rhs.g_hat0[static_cast<size_t>(j)];
    ++row;
  }
  {  // normal stress
    for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) += 2.0 * p.mu * D(0, k);
    for (int l = 0; l < N - 1; ++l)
      A(row, u_at(l, 0)) += (p.nu - p.mu) * I * pt.xi_prime[static_cast<size_t>(l)];
    for (int k = 0; k < M; ++k) A(row, u_at(N - 1, k)) += (p.nu - p.mu) * D(0, k);
    A(row, rho_at(0)) += -p.gamma_star - p.kappa * xi2;
    for (int k = 0; k < M; ++k) A(row, rho_at(k)) += p.kappa * D2(0, k);
    A(row, h_at) += p.sigma * xi2;
    b(row) = rhs.g_hat0.empty() ? Complex(0.0, 0.0) : rhs.g_hat0[static_cast<size_t>(N - 1)];
    ++row;
  }
  {  // Neumann
    for (int k = 0; k < M; ++k) A(row, rho_at(k)) += D(0, k);
    b(row) = rhs.k_hat0;
    ++row;
  }
  {  // kinematic
    A(row, h_at) += lam;
    A(row, u_at(N - 1, 0)) += 1.0;
    b(row) = rhs.zeta_hat0;
    ++row;
  }

  // Far field at x = L (node M-1).
  for (int J = 0; J < N; ++J) {
    A(row, u_at(J, M - 1)) += 1.0;
    ++row;
  }
  A(row, rho_at(M - 1)) += 1.0;
  ++row;

  if (row != n_unknowns) throw OracleError("solve_general_mode: row count mismatch");

  Eigen::PartialPivLU<Mat> lu(A);
  Vec z = lu.solve(b);
  for (int it = 0; it < 2; ++it) {  // iterative refinement
    Vec r = b - A * z;
    z += lu.solve(r);
  }
  const double bn = b.norm();
  const double res = bn > 0.0 ? (A * z - b).norm() / bn : (A * z).norm();

  // One-norm condition estimate via the LU factorization.
  double cond = 0.0;
  {
    const double anorm = A.cwiseAbs().colwise().sum().maxCoeff();
    // Estimate ||A^{-1}||_1 by a few solves on unit-norm probe vectors.
    double ainv = 0.0;
    Vec e = Vec::Constant(n_unknowns, Complex(1.0 / n_unknowns, 0.0));
    for (int it = 0; it < 3; ++it) {
      Vec y = lu.solve(e);
      ainv = std::max(ainv, y.template lpNorm<1>());
      // Next probe: align with the largest component.
      int idx = 0;
      y.cwiseAbs().maxCoeff(&idx);
      e.setZero();
      e(idx) = 1.0;
    }
    cond = anorm * ainv;
  }
  if (cond > cond_limit)
    throw OracleError("solve_general_mode: condition estimate above threshold");

  OracleSolution out;
  out.x_nodes = x;
  out.domain_length = L;
  out.cond_estimate = cond;
  out.discrete_residual = res;
  out.rho.resize(static_cast<size_t>(M));
  out.u.assign(static_cast<size_t>(N), std::vector<Complex>(static_cast<size_t>(M)));
  for (int i = 0; i < M; ++i) {
    out.rho[static_cast<size_t>(i)] = z(rho_at(i));
    for (int J = 0; J < N; ++J) out.u[static_cast<size_t>(J)][static_cast<size_t>(i)] = z(u_at(J, i));
  }
  out.h0 = z(h_at);
  return out;
}

// Barycentric interpolation on the solver's Chebyshev nodes.
Complex interp(const std::vector<double>& x, const std::vector<Complex>& f, double xq) {
  const int M = static_cast<int>(x.size());
  Complex num(0.0, 0.0), den(0.0, 0.0);
  for (int i = 0; i < M; ++i) {
    double w = (i == 0 || i == M - 1) ? 0.5 : 1.0;
    if (i % 2 == 1) w = -w;
    const double dx = xq - x[static_cast<size_t>(i)];
    if (std::abs(dx) < 1e-14) return f[static_cast<size_t>(i)];
    const Complex t = Complex(w / dx, 0.0);
    num += t * f[static_cast<size_t>(i)];
    den += t;
  }
  return num / den;
}

}  // namespace

OracleSolution solve_general_mode(const SectorPoint& pt, const GeneralModeRHS& rhs,
                                  const FluidParams& p, const CollocationConfig& cfg,
                                  bool estimate_truncation) {
  DerivedConstants c = derive_constants(p);
  const double L = cfg.domain_length > 0.0 ? cfg.domain_length : default_length(pt, p, c);
  OracleSolution sol = solve_once(pt, rhs, p, effective_nodes(cfg.num_nodes, L, pt, p, c),
                                  L, cfg.cond_limit);
  if (estimate_truncation) {
    OracleSolution big =
        solve_once(pt, rhs, p, effective_nodes(cfg.num_nodes, 2.0 * L, pt, p, c), 2.0 * L,
                   cfg.cond_limit);
    double gap = std::abs(sol.h0 - big.h0);
    double scale = std::max(1e-300, std::abs(big.h0));
    for (size_t i = 0; i < sol.x_nodes.size(); ++i) {
      const double xq = sol.x_nodes[i];
      if (xq > L / 2.0) continue;
      gap = std::max(gap, std::abs(sol.rho[i] - interp(big.x_nodes, big.rho, xq)));
      for (size_t J = 0; J < sol.u.size(); ++J)
        gap = std::max(gap, std::abs(sol.u[J][i] - interp(big.x_nodes, big.u[J], xq)));
      scale = std::max(scale, std::abs(sol.rho[i]));
    }
    sol.truncation_estimate = gap / scale;
  }
  return sol;
}

FormulaComparison compare_with_formula(const SectorPoint& pt, Complex eta0,
                                       const FluidParams& p, const DerivedConstants& c,
                                       const CollocationConfig& cfg) {
  FluidParams p0 = p;
  p0.gamma_star = 0.0;
  GeneralModeRHS rhs;
  rhs.zeta_hat0 = eta0;
  OracleSolution orc = solve_general_mode(pt, rhs, p0, cfg, true);
  ModeSolution ana = solve_mode(pt, eta0, p0, c);

  FormulaComparison cmp;
  cmp.truncation_estimate = orc.truncation_estimate;
  double scale = std::max(1e-300, std::abs(ana.h0));
  for (size_t i = 0; i < orc.x_nodes.size(); ++i) {
    if (orc.x_nodes[i] > orc.domain_length / 2.0) break;
    scale = std::max(scale, std::abs(ana.rho_hat.eval(ana.symbols, orc.x_nodes[i])));
    for (const auto& u : ana.u_hat)
      scale = std::max(scale, std::abs(u.eval(ana.symbols, orc.x_nodes[i])));
  }
  if (eta0 == Complex(0.0, 0.0)) scale = 1.0;
  for (size_t i = 0; i < orc.x_nodes.size(); ++i) {
    const double xq = orc.x_nodes[i];
    if (xq > orc.domain_length / 2.0) break;
    cmp.gap_rho = std::max(cmp.gap_rho,
        std::abs(orc.rho[i] - ana.rho_hat.eval(ana.symbols, xq)) / scale);
    for (size_t J = 0; J < orc.u.size(); ++J)
      cmp.gap_u = std::max(cmp.gap_u,
          std::abs(orc.u[J][i] - ana.u_hat[J].eval(ana.symbols, xq)) / scale);
  }
  cmp.gap_h0 = std::abs(orc.h0 - ana.h0) / std::max(1e-300, std::abs(ana.h0));
  if (eta0 == Complex(0.0, 0.0)) cmp.gap_h0 = std::abs(orc.h0 - ana.h0);
  return cmp;
}

}  // namespace nsk
