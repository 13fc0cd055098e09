#pragma once
// Physical-space resolvent solver on a tangential torus: FFT in x', exact
// per-mode solve, inverse FFT; exact lambda-weighted derivative-tuple norms
// at q = 2 via the pure-exponential profile representation.

#include <array>

#include "nsk/fft.hpp"
#include "nsk/mode_solver.hpp"

namespace nsk {

struct FieldGrid {
  double period = 2.0 * M_PI;      // per tangential direction
  int modes = 32;                  // power of two, per tangential direction
  std::vector<double> xN_nodes = {0.0, 0.25, 0.5, 1.0, 2.0};
  int dimension = 2;               // N; tangential directions = N - 1
};

struct NormTriple {
  // R_rho = (||grad^3 rho||, |lambda|^{1/2} ||grad^2 rho||, |lambda| ||rho||)
  std::array<double, 3> R_rho{};
  // S_u = (||grad^2 u||, |lambda|^{1/2} ||grad u||, |lambda| ||u||)
  std::array<double, 3> S_u{};
  // T_h = (||h||_{H^{5/2}}, ||lambda h||_{H^{3/2}})
  std::array<double, 2> T_h{};
  double sum() const {
    return R_rho[0] + R_rho[1] + R_rho[2] + S_u[0] + S_u[1] + S_u[2] + T_h[0] + T_h[1];
  }
};

struct FieldSolution {
  FieldGrid grid;
  Complex lambda;
  std::vector<Complex> eta_hat;          // flattened mode coefficients
  std::vector<ModeSolution> modes;       // same flattened order
  // Physical fields: [xN index][flattened x' index].
  std::vector<std::vector<Complex>> rho;
  std::vector<std::vector<std::vector<Complex>>> u;  // [component][xN][x']
  std::vector<Complex> h;                // boundary, [x']
  double aliasing_energy_fraction = 0.0; // energy in the top third of spectrum
};

// Tangential frequency of flattened mode index; Nyquist rows are zeroed.
std::vector<double> mode_frequency(const FieldGrid& g, size_t flat_index);
size_t mode_count(const FieldGrid& g);

FieldSolution solve_field(const std::vector<Complex>& eta_samples, Complex lambda,
                          const FluidParams& p, const DerivedConstants& c,
                          const FieldGrid& grid);

struct FieldResidualReport {
  double interior = 0.0;  // max over mass/momentum equations, all modes
  double boundary = 0.0;  // max over the four boundary conditions, all modes
  double max() const { return std::max(interior, boundary); }
};

// Residual of the stored solution against the resolvent system; lambda can
// be overridden to probe sensitivity (profiles stay fixed).
FieldResidualReport residual_field(const FieldSolution& sol, const FluidParams& p,
                                   const Complex* lambda_override = nullptr);

// ||grad^m f||^2 contribution of one tangential mode (tensor convention,
// exact x_N integrals, no volume factor).
double mode_grad_norm2(const ExpProfile& f, const ModeSymbols& sym,
                       const std::vector<double>& xi_prime, int m);

NormTriple compute_norms(const FieldSolution& sol);

// Max relative gap between physical-grid quadrature and spectral-sum L2
// norms of rho over the xN evaluation nodes.
double parseval_gap(const FieldSolution& sol);

// H^2-equivalent boundary data norm used in the resolvent quotient.
double data_norm_h2(const std::vector<Complex>& eta_samples, const FieldGrid& grid);

}  // namespace nsk
