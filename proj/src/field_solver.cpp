#include "nsk/field_solver.hpp"

#include <algorithm>
#include <cmath>

namespace nsk {

namespace {

int freq_index(int k, int K) { return k <= K / 2 ? k : k - K; }

double multinomial(int m, int a, int b) {
  // m! / (a! b! (m-a-b)!) for the tensor-norm convention of grad^m.
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return fact(m) / (fact(a) * fact(b) * fact(m - a - b));
}

}  // namespace

size_t mode_count(const FieldGrid& g) {
  const size_t K = static_cast<size_t>(g.modes);
  return g.dimension == 3 ? K * K : K;
}

std::vector<double> mode_frequency(const FieldGrid& g, size_t flat) {
  const int K = g.modes;
  const double base = 2.0 * M_PI / g.period;
  if (g.dimension == 3) {
    const int k1 = static_cast<int>(flat) / K;
    const int k2 = static_cast<int>(flat) % K;
    return {base * freq_index(k1, K), base * freq_index(k2, K)};
  }
  return {base * freq_index(static_cast<int>(flat), K)};
}

namespace {

bool is_nyquist(const FieldGrid& g, size_t flat) {
  const int K = g.modes;
  if (g.dimension == 3) {
    const int k1 = static_cast<int>(flat) / K;
    const int k2 = static_cast<int>(flat) % K;
    return k1 == K / 2 || k2 == K / 2;
  }
  return static_cast<int>(flat) == K / 2;
}

// Forward/inverse FFT on the flattened tangential grid (1D or 2D).
void fft_grid(std::vector<Complex>& a, const FieldGrid& g, bool inverse) {
  const size_t K = static_cast<size_t>(g.modes);
  if (g.dimension == 2) {
    fft_inplace(a, inverse);
    if (!inverse)
      for (auto& x : a) x /= static_cast<double>(K);
    else
      for (auto& x : a) x *= static_cast<double>(K);
    return;
  }
  std::vector<Complex> line(K);
  for (size_t r = 0; r < K; ++r) {  // rows
    for (size_t j = 0; j < K; ++j) line[j] = a[r * K + j];
    fft_inplace(line, inverse);
    for (size_t j = 0; j < K; ++j) a[r * K + j] = line[j];
  }
  for (size_t cidx = 0; cidx < K; ++cidx) {  // columns
    for (size_t i = 0; i < K; ++i) line[i] = a[i * K + cidx];
    fft_inplace(line, inverse);
    for (size_t i = 0; i < K; ++i) a[i * K + cidx] = line[i];
  }
  const double n = static_cast<double>(K * K);
  if (!inverse)
    for (auto& x : a) x /= n;
  else
    for (auto& x : a) x *= n;
}

}  // namespace

FieldSolution solve_field(const std::vector<Complex>& eta_samples, Complex lambda,
                          const FluidParams& p, const DerivedConstants& c,
                          const FieldGrid& grid) {
  if (!is_pow2(static_cast<size_t>(grid.modes)))
    throw std::invalid_argument("solve_field: modes must be a power of two");
  const size_t M = mode_count(grid);
  if (eta_samples.size() != M)
    throw std::invalid_argument("solve_field: eta sample count mismatch");

  FieldSolution sol;
  sol.grid = grid;
  sol.lambda = lambda;
  sol.eta_hat = eta_samples;
  fft_grid(sol.eta_hat, grid, false);

  // Aliasing diagnostic: energy carried by the top third of the spectrum.
  double total = 0.0, top = 0.0;
  for (size_t k = 0; k < M; ++k) {
    const double e = std::norm(sol.eta_hat[k]);
    total += e;
    auto xi = mode_frequency(grid, k);
    double idx = 0.0;
    for (size_t d = 0; d < xi.size(); ++d)
      idx = std::max(idx, std::abs(xi[d]) * grid.period / (2.0 * M_PI));
    if (idx >= grid.modes / 3.0) top += e;
  }
  sol.aliasing_energy_fraction = total > 0.0 ? top / total : 0.0;

  const int N = grid.dimension;
  sol.modes.reserve(M);
  for (size_t k = 0; k < M; ++k) {
    Complex ek = is_nyquist(grid, k) ? Complex(0.0, 0.0) : sol.eta_hat[k];
    sol.eta_hat[k] = ek;
    SectorPoint pt;
    pt.xi_prime = mode_frequency(grid, k);
    pt.lambda = lambda;
    sol.modes.push_back(solve_mode(pt, ek, p, c));
  }

  // Assemble physical fields.
  const size_t nx = grid.xN_nodes.size();
  sol.rho.assign(nx, std::vector<Complex>(M));
  sol.u.assign(static_cast<size_t>(N), std::vector<std::vector<Complex>>(nx, std::vector<Complex>(M)));
  sol.h.assign(M, Complex(0.0, 0.0));
  for (size_t k = 0; k < M; ++k) sol.h[k] = sol.modes[k].h0;
  fft_grid(sol.h, grid, true);
  for (size_t ix = 0; ix < nx; ++ix) {
    const double x = grid.xN_nodes[ix];
    std::vector<Complex> row(M);
    for (size_t k = 0; k < M; ++k)
      row[k] = sol.modes[k].decoupled ? Complex(0.0, 0.0)
                                      : sol.modes[k].rho_hat.eval(sol.modes[k].symbols, x);
    fft_grid(row, grid, true);
    sol.rho[ix] = row;
    for (int J = 0; J < N; ++J) {
      for (size_t k = 0; k < M; ++k)
        row[k] = sol.modes[k].decoupled
            ? Complex(0.0, 0.0)
            : sol.modes[k].u_hat[static_cast<size_t>(J)].eval(sol.modes[k].symbols, x);
      fft_grid(row, grid, true);
      sol.u[static_cast<size_t>(J)][ix] = row;
    }
  }
  return sol;
}

FieldResidualReport residual_field(const FieldSolution& sol, const FluidParams& p,
                                   const Complex* lambda_override) {
  FieldResidualReport rep;
  // Global normalization so a zeroed or corrupted mode is visible.
  double scale = 1.0;
  const Complex lam = lambda_override ? *lambda_override : sol.lambda;
  for (const auto& m : sol.modes) {
    double s = m.rho_hat.max_coeff();
    for (const auto& u : m.u_hat) s = std::max(s, u.max_coeff());
    scale = std::max(scale, std::abs(lam) * s);
    scale = std::max(scale, std::abs(m.eta0));
  }
  const std::vector<double> xgrid = {0.1, 0.5, 1.2, 2.5};
  for (const auto& m : sol.modes) {
    ModeSolution probe = m;
    probe.point.lambda = lam;
    if (probe.decoupled) {
      // Only the kinematic relation is active at xi' = 0.
      rep.boundary = std::max(rep.boundary,
          std::abs(lam * probe.h0 - probe.eta0) / scale);
      continue;
    }
    auto ode = residual_ode(probe, p, xgrid);
    auto bc = residual_bc(probe, p);
    // residual_* normalize per mode; undo and apply the global scale.
    double local = std::max(1.0, std::abs(lam) * std::max({probe.rho_hat.max_coeff(),
        probe.u_hat[0].max_coeff(), probe.u_hat.back().max_coeff()}));
    rep.interior = std::max(rep.interior, ode.max() * local / scale);
    rep.boundary = std::max(rep.boundary, bc.max() * local / scale);
  }
  return rep;
}

double mode_grad_norm2(const ExpProfile& f, const ModeSymbols& sym,
                       const std::vector<double>& xi_prime, int m) {
  if (f.is_zero()) return 0.0;
  double s = 0.0;
  for (int b = 0; b <= m; ++b) {
    const double dn2 = l2_norm2_deriv(f, sym, b);
    // Tensor-norm weight over tangential multi-indices with |alpha'| = m-b.
    const int a = m - b;
    double w = 0.0;
    if (xi_prime.size() == 1) {
      w = multinomial(m, a, 0) * std::pow(xi_prime[0] * xi_prime[0], a);
    } else {
      const double x1s = xi_prime[0] * xi_prime[0];
      const double x2s = xi_prime[1] * xi_prime[1];
      for (int a1 = 0; a1 <= a; ++a1)
        w += multinomial(m, a1, a - a1) * std::pow(x1s, a1) * std::pow(x2s, a - a1);
    }
    s += w * dn2;
  }
  return s;
}

namespace {

// ||grad^m f||^2 for one field described per mode by ExpProfiles.
double grad_norm2(const FieldSolution& sol,
                  const std::function<const ExpProfile*(const ModeSolution&)>& pick,
                  int m) {
  const double vol = std::pow(sol.grid.period, sol.grid.dimension - 1);
  double s = 0.0;
  for (size_t k = 0; k < sol.modes.size(); ++k) {
    const auto& mode = sol.modes[k];
    if (mode.decoupled) continue;
    const ExpProfile* f = pick(mode);
    if (!f) continue;
    s += vol * mode_grad_norm2(*f, mode.symbols, mode.point.xi_prime, m);
  }
  return s;
}

}  // namespace

NormTriple compute_norms(const FieldSolution& sol) {
  NormTriple t;
  const double alam = std::abs(sol.lambda);
  auto rho_pick = [](const ModeSolution& m) { return &m.rho_hat; };
  t.R_rho[0] = std::sqrt(grad_norm2(sol, rho_pick, 3));
  t.R_rho[1] = std::sqrt(alam) * std::sqrt(grad_norm2(sol, rho_pick, 2));
  t.R_rho[2] = alam * std::sqrt(grad_norm2(sol, rho_pick, 0));
  double s2 = 0.0, s1 = 0.0, s0 = 0.0;
  for (size_t J = 0; J < sol.u.size(); ++J) {
    auto pick = [J](const ModeSolution& m) { return &m.u_hat[J]; };
    s2 += grad_norm2(sol, pick, 2);
    s1 += grad_norm2(sol, pick, 1);
    s0 += grad_norm2(sol, pick, 0);
  }
  t.S_u[0] = std::sqrt(s2);
  t.S_u[1] = std::sqrt(alam) * std::sqrt(s1);
  t.S_u[2] = alam * std::sqrt(s0);
  const double vol = std::pow(sol.grid.period, sol.grid.dimension - 1);
  double h25 = 0.0, h15 = 0.0;
  for (size_t k = 0; k < sol.modes.size(); ++k) {
    const double xi2 = sol.modes[k].point.xi_norm2();
    const double e = std::norm(sol.modes[k].h0);
    h25 += vol * std::pow(1.0 + xi2, 2.5) * e;
    h15 += vol * std::pow(1.0 + xi2, 1.5) * e;
  }
  t.T_h[0] = std::sqrt(h25);
  t.T_h[1] = alam * std::sqrt(h15);
  return t;
}

double parseval_gap(const FieldSolution& sol) {
  const size_t M = sol.modes.size();
  const double vol = std::pow(sol.grid.period, sol.grid.dimension - 1);
  double gap = 0.0;
  for (size_t ix = 0; ix < sol.grid.xN_nodes.size(); ++ix) {
    const double x = sol.grid.xN_nodes[ix];
    double phys = 0.0, spec = 0.0;
    for (size_t k = 0; k < M; ++k) {
      phys += std::norm(sol.rho[ix][k]) * vol / static_cast<double>(M);
      const auto& m = sol.modes[k];
      if (!m.decoupled) spec += vol * std::norm(m.rho_hat.eval(m.symbols, x));
    }
    const double denom = std::max({phys, spec, 1e-300});
    gap = std::max(gap, std::abs(phys - spec) / denom);
  }
  return gap;
}

double data_norm_h2(const std::vector<Complex>& eta_samples, const FieldGrid& grid) {
  std::vector<Complex> hat = eta_samples;
  fft_grid(hat, grid, false);
  const double vol = std::pow(grid.period, grid.dimension - 1);
  double s = 0.0;
  for (size_t k = 0; k < hat.size(); ++k) {
    auto xi = mode_frequency(grid, k);
    double xi2 = 0.0;
    for (double v : xi) xi2 += v * v;
    s += vol * std::pow(1.0 + xi2, 2.0) * std::norm(hat[k]);
  }
  return std::sqrt(s);
}

}  // namespace nsk
