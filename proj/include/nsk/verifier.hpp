#pragma once
// Numerical certification of the multiplier classes, the determinant lower
// bound, and the high-frequency asymptotics; also produces the empirical
// eps_* and lambda_0 estimates.

#include <map>
#include <string>
#include <vector>

#include "nsk/symbols.hpp"

namespace nsk {

// Symbol identifiers accepted by the verifier:
//   omega, t1, t2, a, p1, p2, q1, q2, l1, l2, xi2, M, Minv, m
// `power` is an integer exponent applied to the base symbol.
struct ClassSpec {
  std::string symbol_id;
  int power = 1;
  double order = 0.0;      // s in the weight (|lambda|^{1/2}+|xi'|)^{s-|a|}
  int class_type = 1;      // 1 or 2 (type 2 uses |xi'|^{-|a|})
  int lam_xi_pow = 0;      // extra factor (|lambda|+|xi'|)^{lam_xi_pow}
  int max_alpha = 2;       // tested xi'-derivative order
  int tau_order = 1;       // (tau d_tau)^n up to n = tau_order
};

// Derivative |d^{a}_{xi'} (tau d_tau)^n m| via nested dual numbers.
// a = (a1, a2) with a1 + a2 <= 2, n in {0, 1}. xi may have 1 or 2
// components; a2 must be 0 for one tangential dimension.
Complex symbol_derivative(const std::string& id, int power, const FluidParams& p,
                          const DerivedConstants& c, const std::vector<double>& xi,
                          Complex lambda, int a1, int a2, int n);

// Central finite-difference cross-check of the same quantity (first order
// in xi1 or tau only).
Complex symbol_derivative_fd(const std::string& id, int power, const FluidParams& p,
                             const DerivedConstants& c, const std::vector<double>& xi,
                             Complex lambda, bool wrt_tau);

struct ClassScanGrid {
  int n_shells = 6;
  double shell0 = 1.0;       // radius of the first dyadic shell
  int pts_per_shell = 24;
  std::uint64_t seed = 7;
};

struct ClassScanReport {
  std::string symbol;
  ClassSpec spec;
  double epsilon = 0.0;
  // Key "a1,a2,n" -> per-shell sup constants.
  std::map<std::string, std::vector<double>> shell_constants;
  std::vector<double> shell_radii;
  bool pass = false;
  double worst_spread = 0.0;   // max over keys of (max shell / median shell)
};

ClassScanReport verify_class_membership(const ClassSpec& spec, const Sector& sector,
                                        const ClassScanGrid& grid, const FluidParams& p,
                                        const DerivedConstants& c);

// Log-log slope of the n=0, alpha=0 symbol magnitude against the shell
// radius (used for the l_j order-6 check).
double symbol_loglog_slope(const std::string& id, int power, const Sector& sector,
                           const ClassScanGrid& grid, const FluidParams& p,
                           const DerivedConstants& c);

struct DetScanGrid {
  int n_xi = 40;
  double xi_min = 1e-3, xi_max = 1e3;
  int n_mod = 40;
  double mod_min = 1.0, mod_max = 1e6;
  int n_arg = 8;
  std::uint64_t seed = 11;
};

struct DetScanReport {
  double min_ratio = 0.0;
  SectorPoint argmin;
  std::vector<double> shell_lambda;      // dyadic |lambda| shell lower edges
  std::vector<double> shell_min_ratio;
  double empirical_lambda0 = 0.0;        // smallest stabilized lower cutoff
  bool pass = false;
  // Raw per-point rows (|xi'|, |lambda|, arg, ratio) for CSV export.
  std::vector<std::array<double, 4>> points;
};

DetScanReport scan_lopatinskii_lower_bound(const FluidParams& p, const DerivedConstants& c,
                                           const Sector& sector, const DetScanGrid& grid);

struct AsymptoticsReport {
  std::vector<double> lambda0;   // tested cutoffs, consecutive ratio 16
  std::vector<double> dev_t, dev_l, dev_a, dev_M;  // max deviations per cutoff
  bool pass = false;
};

AsymptoticsReport check_high_frequency_asymptotics(const FluidParams& p,
                                                   const DerivedConstants& c,
                                                   double epsilon,
                                                   std::uint64_t seed = 13);

// Smallest epsilon (stepped by 0.02 above eps_tilde_star) at which l_j^{-1}
// passes the order -6 scale-stability test, with all larger steps passing.
double estimate_eps_star(const FluidParams& p, const DerivedConstants& c);

}  // namespace nsk
