#pragma once
// Independent spectral-collocation solver for the full per-mode resolvent
// system with arbitrary right-hand sides and gamma_star, used as ground
// truth for the closed-form solution.

#include <functional>
#include <vector>

#include "nsk/mode_solver.hpp"

namespace nsk {

struct CollocationConfig {
  int num_nodes = 96;         // Chebyshev-Lobatto points per unknown
  double domain_length = 0.0; // 0 => adaptive 24 / (min decay rate)
  double cond_limit = 1e12;   // reject solves beyond this condition estimate
};

struct GeneralModeRHS {
  ScalarProfileFn d_hat;                  // mass source, may be null (zero)
  std::vector<ScalarProfileFn> f_hat;     // N momentum sources, may be empty
  std::vector<Complex> g_hat0;            // boundary stress data, length N
  Complex k_hat0{};                       // Neumann data
  Complex zeta_hat0{};                    // kinematic data
};

struct OracleSolution {
  std::vector<double> x_nodes;
  std::vector<Complex> rho;
  std::vector<std::vector<Complex>> u;  // [component][node]
  Complex h0{};
  double domain_length = 0.0;
  double cond_estimate = 0.0;
  double discrete_residual = 0.0;       // ||A z - b|| / ||b||
  double truncation_estimate = 0.0;     // gap against a 2L solve (if requested)
};

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves the two-point boundary-value system on [0, L]; interior equations
// include the gamma_star gradient term. Far field: u = 0 and rho = 0 at L.
OracleSolution solve_general_mode(const SectorPoint& pt, const GeneralModeRHS& rhs,
                                  const FluidParams& p, const CollocationConfig& cfg,
                                  bool estimate_truncation = false);

struct FormulaComparison {
  double gap_rho = 0.0;
  double gap_u = 0.0;   // max over components
  double gap_h0 = 0.0;
  double truncation_estimate = 0.0;
  double max() const { return std::max({gap_rho, gap_u, gap_h0}); }
};

// Oracle vs closed-form solution for zeta-only data (gamma_star forced to 0),
// sup-norm relative gaps over [0, L/2].
FormulaComparison compare_with_formula(const SectorPoint& pt, Complex eta0,
                                       const FluidParams& p, const DerivedConstants& c,
                                       const CollocationConfig& cfg);

}  // namespace nsk
