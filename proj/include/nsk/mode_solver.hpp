#pragma once
// Exact per-mode solution (rho_hat, u_hat, h(0)) of the Fourier-side
// resolvent system driven by kinematic boundary data eta_hat(0), plus
// residual evaluation and the Volevich-identity (half-space quadrature)
// route to the same solution.

#include <functional>
#include <vector>

#include "nsk/profile.hpp"

namespace nsk {

struct ModeSolution {
  ExpProfile rho_hat;
  std::vector<ExpProfile> u_hat;  // N components; index N-1 is the normal one
  Complex h0;                     // boundary height transform
  SectorPoint point;
  Complex eta0;
  ModeSymbols symbols;
  bool decoupled = false;         // xi' = 0 limit: fields zero, h0 = eta0/lambda
};

ModeSolution solve_mode(const SectorPoint& pt, Complex eta0, const FluidParams& p,
                        const DerivedConstants& c);

struct OdeResidualReport {
  double mass = 0.0;
  double momentum_tangential = 0.0;  // max over tangential components
  double momentum_normal = 0.0;
  double max() const;
};

struct BcResidualReport {
  double tangential_stress = 0.0;  // max over tangential components
  double normal_stress = 0.0;
  double neumann = 0.0;
  double kinematic = 0.0;
  double max() const;
};

// Interior equations of the per-mode system evaluated with exact profile
// derivatives on the given x_N grid, normalized by max(1, |lambda| * scale).
OdeResidualReport residual_ode(const ModeSolution& sol, const FluidParams& p,
                               const std::vector<double>& grid);

BcResidualReport residual_bc(const ModeSolution& sol, const FluidParams& p);

// ---------------------------------------------------------------------------
// Volevich route: eta given as a decaying profile of x_N with derivative.

struct VolevichSolution {
  std::vector<double> x_nodes;
  std::vector<Complex> rho;
  std::vector<std::vector<Complex>> u;  // [component][node]
  Complex h0;
  double quad_error_estimate = 0.0;
};

using ScalarProfileFn = std::function<Complex(double)>;

VolevichSolution solve_mode_volevich(const SectorPoint& pt, const ScalarProfileFn& eta,
                                     const ScalarProfileFn& deta,
                                     const std::vector<double>& x_nodes,
                                     const FluidParams& p, const DerivedConstants& c,
                                     double tol = 1e-9);

// Checks one Volevich identity: kernel(x) * eta(0) against the y-quadrature of
// -kernel'(x+y) eta(y) - kernel(x+y) eta'(y). Returns the absolute mismatch
// normalized by max(1, |kernel(x) eta(0)|).
double check_volevich_identity(const ModeSymbols& sym, Kernel kind, double x,
                               const ScalarProfileFn& eta, const ScalarProfileFn& deta,
                               double tol = 1e-10);

// Adaptive Simpson quadrature over [0, inf) for exponentially decaying
// integrands; decay is the slowest expected decay rate.
Complex integrate_halfline(const std::function<Complex(double)>& f, double decay,
                           double tol, double* err_estimate = nullptr);

}  // namespace nsk
