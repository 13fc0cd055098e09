#include <doctest.h>

#include "nsk/bvp_oracle.hpp"

using namespace nsk;

namespace {
FluidParams set_a() { return {1.0, 3.0, 1.0, 1.0, 0.0, 1.0, 2}; }
FluidParams set_b() { return {1.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2}; }

SectorPoint point(double xi, Complex lam) {
  SectorPoint pt;
  pt.xi_prime = {xi};
  pt.lambda = lam;
  return pt;
}
}  // namespace

TEST_CASE("collocation solution matches the closed form") {
  CollocationConfig cfg;
  for (auto* ps : {&set_a, &set_b}) {
    auto p = ps();
    auto c = derive_constants(p);
    for (double xi : {0.1, 0.7, 3.0}) {
      for (Complex lam : {Complex(1.0, 0.0), Complex(2.0, 1.5), Complex(0.5, 5.0)}) {
        auto cmp = compare_with_formula(point(xi, lam), Complex(1.0, 0.3), p, c, cfg);
        CHECK(cmp.max() < 1e-8);
        CHECK(cmp.truncation_estimate < 1e-8);
      }
    }
  }
}

TEST_CASE("discrete residual and conditioning are reported") {
  auto p = set_a();
  GeneralModeRHS rhs;
  rhs.zeta_hat0 = Complex(1.0, 0.3);
  CollocationConfig cfg;
  auto sol = solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p, cfg, true);
  CHECK(sol.discrete_residual < 1e-9);
  CHECK(sol.cond_estimate > 1.0);
  CHECK(sol.truncation_estimate < 1e-8);
  CHECK(sol.x_nodes.front() == 0.0);
  CHECK(sol.x_nodes.back() == doctest::Approx(sol.domain_length));
  // Far-field values are negligible.
  CHECK(std::abs(sol.rho.back()) < 1e-12);
  CHECK(std::abs(sol.u[1].back()) < 1e-12);

  CollocationConfig strict = cfg;
  strict.cond_limit = 1.0;
  CHECK_THROWS_AS(solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p, strict),
                  OracleError);
}

TEST_CASE("general right-hand sides: gamma_star and interior forcing") {
  FluidParams p = set_a();
  p.gamma_star = 0.8;
  GeneralModeRHS rhs;
  rhs.zeta_hat0 = Complex(1.0, 0.3);
  rhs.k_hat0 = Complex(0.2, -0.1);
  rhs.g_hat0 = {Complex(0.5, 0.0), Complex(-0.3, 0.4)};
  rhs.d_hat = [](double x) { return Complex(std::exp(-2.0 * x), 0.0); };
  rhs.f_hat = {[](double x) { return Complex(0.0, std::exp(-x)); },
               [](double x) { return Complex(std::exp(-1.5 * x), 0.0); }};
  CollocationConfig cfg;
  auto sol = solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p, cfg, true);
  CHECK(sol.discrete_residual < 1e-9);
  // Self-convergence on the doubled domain certifies the truncation.
  CHECK(sol.truncation_estimate < 1e-8);
  CHECK(std::abs(sol.h0) > 0.0);

  // The gamma_star term matters: dropping it changes the solution.
  FluidParams p0 = p;
  p0.gamma_star = 0.0;
  auto sol0 = solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p0, cfg);
  CHECK(std::abs(sol.h0 - sol0.h0) > 1e-4 * std::abs(sol.h0));
}

TEST_CASE("oracle is linear in the kinematic data") {
  auto p = set_a();
  CollocationConfig cfg;
  GeneralModeRHS rhs;
  rhs.zeta_hat0 = Complex(1.0, 0.0);
  auto one = solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p, cfg);
  rhs.zeta_hat0 = Complex(2.0, -0.6);
  auto two = solve_general_mode(point(0.7, Complex(2.0, 1.5)), rhs, p, cfg);
  CHECK(std::abs(two.h0 - Complex(2.0, -0.6) * one.h0) < 1e-9 * std::abs(one.h0));
}

TEST_CASE("dimension three collocation") {
  FluidParams p = set_a();
  p.dimension = 3;
  auto c = derive_constants(p);
  SectorPoint pt;
  pt.xi_prime = {0.4, 0.55};
  pt.lambda = Complex(2.0, 1.5);
  CollocationConfig cfg;
  auto cmp = compare_with_formula(pt, Complex(1.0, 0.3), p, c, cfg);
  CHECK(cmp.max() < 1e-8);
}
