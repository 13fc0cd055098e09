#include <doctest.h>

#include "nsk/field_solver.hpp"

using namespace nsk;

namespace {
FluidParams set_a(int dim = 2) { return {1.0, 3.0, 1.0, 1.0, 0.0, 1.0, dim}; }

std::vector<Complex> gaussian_samples(const FieldGrid& g, double width) {
  const size_t M = mode_count(g);
  std::vector<Complex> eta(M);
  const int K = g.modes;
  for (size_t k = 0; k < M; ++k) {
    double r2 = 0.0;
    if (g.dimension == 3) {
      const double x1 = g.period * static_cast<double>(k / K) / K - g.period / 2.0;
      const double x2 = g.period * static_cast<double>(k % K) / K - g.period / 2.0;
      r2 = x1 * x1 + x2 * x2;
    } else {
      const double x1 = g.period * static_cast<double>(k) / K - g.period / 2.0;
      r2 = x1 * x1;
    }
    eta[k] = std::exp(-width * r2);
  }
  return eta;
}
}  // namespace

TEST_CASE("FFT round trip and Parseval") {
  std::vector<Complex> a = {{1, 0}, {0, 2}, {-1, 1}, {3, -2}, {0, 0}, {1, 1}, {2, 0}, {-1, -1}};
  auto b = ifft(fft(a));
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
  CHECK_THROWS(fft(std::vector<Complex>(3)));
}

TEST_CASE("single-mode diagnostic reproduces the per-mode solution") {
  auto p = set_a();
  auto c = derive_constants(p);
  FieldGrid g;
  g.modes = 32;
  const size_t M = mode_count(g);
  std::vector<Complex> eta(M);
  for (size_t j = 0; j < M; ++j)
    eta[j] = std::exp(Complex(0.0, 3.0 * (2.0 * M_PI * static_cast<double>(j) / M)));
  auto sol = solve_field(eta, Complex(2.0, 1.5), p, c, g);

  SectorPoint pt;
  pt.xi_prime = {3.0 * 2.0 * M_PI / g.period};
  pt.lambda = Complex(2.0, 1.5);
  auto ms = solve_mode(pt, Complex(1.0, 0.0), p, c);
  for (size_t j = 0; j < M; ++j) {
    const Complex phase = std::exp(Complex(0.0, 3.0 * (2.0 * M_PI * static_cast<double>(j) / M)));
    CHECK(std::abs(sol.h[j] - ms.h0 * phase) < 1e-12);
    CHECK(std::abs(sol.rho[0][j] - ms.rho_hat.eval(ms.symbols, 0.0) * phase) < 1e-12);
  }
  CHECK(sol.aliasing_energy_fraction < 1e-12);
}

TEST_CASE("localized data: residuals, Parseval, norms") {
  auto p = set_a();
  auto c = derive_constants(p);
  FieldGrid g;
  g.modes = 32;
  auto eta = gaussian_samples(g, 4.0);
  auto sol = solve_field(eta, Complex(2.0, 1.5), p, c, g);
  auto res = residual_field(sol, p);
  CHECK(res.interior < 1e-12);
  CHECK(res.boundary < 1e-12);
  CHECK(parseval_gap(sol) < 1e-12);
  CHECK(sol.aliasing_energy_fraction < 1e-4);

  auto norms = compute_norms(sol);
  CHECK(norms.sum() > 0.0);
  for (double v : norms.R_rho) CHECK(v >= 0.0);
  for (double v : norms.S_u) CHECK(v >= 0.0);
  CHECK(data_norm_h2(eta, g) > 0.0);

  // Perturbing lambda in the residual probe must be detected.
  const Complex wrong(4.0, 1.5);
  CHECK(residual_field(sol, p, &wrong).max() > 1e-4);
}

TEST_CASE("mode_grad_norm2 against direct quadrature") {
  auto p = set_a();
  auto c = derive_constants(p);
  SectorPoint pt;
  pt.xi_prime = {0.7};
  pt.lambda = Complex(2.0, 1.5);
  auto ms = solve_mode(pt, Complex(1.0, 0.3), p, c);
  // |grad f|^2 = |xi|^2 |f|^2 + |f'|^2 for one mode.
  const int n = 40000;
  const double L = 40.0, dx = L / n;
  auto d1 = differentiate_profile(ms.rho_hat, ms.symbols);
  double q = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double x = i * dx;
    q += w * (0.49 * std::norm(ms.rho_hat.eval(ms.symbols, x)) +
              std::norm(d1.eval(ms.symbols, x)));
  }
  q *= dx / 3.0;
  CHECK(mode_grad_norm2(ms.rho_hat, ms.symbols, pt.xi_prime, 1) ==
        doctest::Approx(q).epsilon(1e-9));
}

TEST_CASE("three-dimensional field solve") {
  auto p = set_a(3);
  auto c = derive_constants(p);
  FieldGrid g;
  g.modes = 8;
  g.dimension = 3;
  auto eta = gaussian_samples(g, 1.5);
  auto sol = solve_field(eta, Complex(2.0, 1.5), p, c, g);
  CHECK(residual_field(sol, p).max() < 1e-12);
  CHECK(parseval_gap(sol) < 1e-12);
  CHECK(compute_norms(sol).sum() > 0.0);
}

TEST_CASE("input validation") {
  auto p = set_a();
  auto c = derive_constants(p);
  FieldGrid g;
  g.modes = 12;  // not a power of two
  CHECK_THROWS(solve_field(std::vector<Complex>(12), Complex(2.0, 0.0), p, c, g));
  g.modes = 16;
  CHECK_THROWS(solve_field(std::vector<Complex>(7), Complex(2.0, 0.0), p, c, g));
}
