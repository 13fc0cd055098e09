#pragma once
// Physical parameters, derived constants, and sector geometry for the
// half-space Navier-Stokes-Korteweg resolvent problem.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsk {

using Complex = std::complex<double>;

struct FluidParams {
  double mu = 1.0;          // shear viscosity
  double nu = 1.0;          // second viscosity coefficient
  double kappa = 1.0;       // capillarity
  double sigma = 1.0;       // surface tension
  double gamma_star = 0.0;  // pressure linearization coefficient
  double rho_star = 1.0;    // reference density
  int dimension = 2;        // spatial dimension N (2 or 3)
};

// Thrown when a parameter set violates positivity or the admissibility
// condition alpha != 0, kappa != mu*nu.
struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DerivedConstants {
  double alpha = 0.0;              // ((mu+nu)/(2 kappa))^2 - 1/kappa
  Complex s1, s2;                  // roots with s1*s2 = 1/kappa
  double eps_tilde_star = 0.0;     // root-angle threshold in [0, pi/2)
  double eps_star_estimate = 0.0;  // empirical, filled in by the verifier
};

struct Sector {
  double epsilon = 0.5;   // angle in (0, pi/2)
  double lambda0 = 0.0;   // lower modulus bound
  bool contains(Complex lambda) const;
};

struct SectorPoint {
  std::vector<double> xi_prime;  // tangential frequency, length N-1
  Complex lambda;

  double xi_norm2() const {
    double s = 0.0;
    for (double x : xi_prime) s += x * x;
    return s;
  }
  double xi_norm() const;
};

// Validates positivity and condition (alpha != 0, kappa != mu nu); throws
// ParamError naming the violated condition otherwise.
void validate(const FluidParams& p);

DerivedConstants derive_constants(const FluidParams& p);

// Absorbs rho_star into the coefficients: (rho,mu,nu,kappa,sigma) ->
// (rho_star rho, rho_star mu, rho_star nu, kappa/rho_star, rho_star sigma),
// leaving a parameter set with rho_star = 1.
FluidParams rescale(const FluidParams& p);

struct SamplingSpec {
  int n_xi = 4;              // tangential moduli (log-spaced)
  double xi_min = 1e-2, xi_max = 1e2;
  int n_mod = 4;             // |lambda| moduli (log-spaced)
  double mod_min = 1.0, mod_max = 1e4;
  int n_arg = 3;             // argument fan within +-(pi - epsilon)
  double arg_margin = 1e-3;  // keep strictly inside the sector
  std::uint64_t seed = 1;    // jitter seed; same seed => same points
  bool jitter = true;
};

// Deterministic log-spaced sampling of (xi', lambda) with lambda in the
// sector. Throws on ranges below lambda0 or empty counts.
std::vector<SectorPoint> sector_sample(const Sector& sec, const SamplingSpec& spec,
                                       int dimension = 2);

// Reads {mu, nu, kappa, sigma, gamma_star, rho_star, dimension} from a JSON
// file; missing keys keep defaults. Validates before returning.
FluidParams load_params(const std::string& path);
FluidParams params_from_json_text(const std::string& text);

}  // namespace nsk
