#include "nsk/params.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace nsk {

bool Sector::contains(Complex lambda) const {
  if (lambda == Complex(0.0, 0.0)) return false;
  if (std::abs(lambda) < lambda0) return false;
  return std::abs(std::arg(lambda)) < M_PI - epsilon;
}

double SectorPoint::xi_norm() const { return std::sqrt(xi_norm2()); }

void validate(const FluidParams& p) {
  if (!(p.mu > 0.0)) throw ParamError("mu must be positive");
  if (!(p.nu > 0.0)) throw ParamError("nu must be positive");
  if (!(p.kappa > 0.0)) throw ParamError("kappa must be positive");
  if (!(p.sigma > 0.0)) throw ParamError("sigma must be positive");
  if (!(p.rho_star > 0.0)) throw ParamError("rho_star must be positive");
  if (p.dimension != 2 && p.dimension != 3)
    throw ParamError("dimension must be 2 or 3");
  const double base = (p.mu + p.nu) / (2.0 * p.kappa);
  const double alpha = base * base - 1.0 / p.kappa;
  if (alpha == 0.0)
    throw ParamError("admissibility violated: alpha = ((mu+nu)/(2 kappa))^2 - 1/kappa = 0");
  if (p.kappa == p.mu * p.nu)
    throw ParamError("admissibility violated: kappa = mu*nu");
}

DerivedConstants derive_constants(const FluidParams& p) {
  validate(p);
  DerivedConstants c;
  const double base = (p.mu + p.nu) / (2.0 * p.kappa);
  c.alpha = base * base - 1.0 / p.kappa;
  if (c.alpha > 0.0) {
    const double r = std::sqrt(c.alpha);
    c.s1 = Complex(base + r, 0.0);
    c.s2 = Complex(base - r, 0.0);
    c.eps_tilde_star = 0.0;
  } else {
    const double r = std::sqrt(-c.alpha);
    c.s1 = Complex(base, r);
    c.s2 = std::conj(c.s1);  // exact conjugate pair
    c.eps_tilde_star = std::arg(c.s1);
  }
  return c;
}

FluidParams rescale(const FluidParams& p) {
  validate(p);
  FluidParams q = p;
  q.mu = p.rho_star * p.mu;
  q.nu = p.rho_star * p.nu;
  q.kappa = p.kappa / p.rho_star;
  q.sigma = p.rho_star * p.sigma;
  q.rho_star = 1.0;
  validate(q);  // rescaling preserves admissibility; re-check anyway
  return q;
}

std::vector<SectorPoint> sector_sample(const Sector& sec, const SamplingSpec& spec,
                                       int dimension) {
  if (spec.n_xi < 1 || spec.n_mod < 1 || spec.n_arg < 1)
    throw ParamError("sector_sample: counts must be >= 1");
  if (spec.mod_min < sec.lambda0 || spec.mod_min <= 0.0)
    throw ParamError("sector_sample: |lambda| range below lambda0 (or nonpositive)");
  if (spec.xi_min <= 0.0 || spec.xi_max < spec.xi_min || spec.mod_max < spec.mod_min)
    throw ParamError("sector_sample: empty or invalid range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double arg_max = M_PI - sec.epsilon - spec.arg_margin;
  std::vector<SectorPoint> out;
  out.reserve(static_cast<size_t>(spec.n_xi) * spec.n_mod * spec.n_arg);
  for (int i = 0; i < spec.n_xi; ++i) {
    const double fx = spec.n_xi == 1 ? 0.0 : double(i) / (spec.n_xi - 1);
    double xi = spec.xi_min * std::pow(spec.xi_max / spec.xi_min, fx);
    for (int j = 0; j < spec.n_mod; ++j) {
      const double fm = spec.n_mod == 1 ? 0.0 : double(j) / (spec.n_mod - 1);
      double mod = spec.mod_min * std::pow(spec.mod_max / spec.mod_min, fm);
      for (int k = 0; k < spec.n_arg; ++k) {
        const double fa = spec.n_arg == 1 ? 0.0 : -1.0 + 2.0 * k / (spec.n_arg - 1);
        double arg = fa * arg_max;
        double xij = xi, modj = mod, argj = arg;
        if (spec.jitter) {
          xij *= std::exp(0.05 * unit(rng));
          modj *= std::exp(0.05 * unit(rng));
          argj += 0.01 * arg_max * unit(rng);
          argj = std::clamp(argj, -arg_max, arg_max);
          modj = std::max(modj, sec.lambda0);
        }
        SectorPoint pt;
        pt.xi_prime.assign(static_cast<size_t>(dimension - 1), 0.0);
        pt.xi_prime[0] = xij;
        pt.lambda = std::polar(modj, argj);
        out.push_back(std::move(pt));
      }
    }
  }
  return out;
}

FluidParams params_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FluidParams p;
  if (j.contains("mu")) p.mu = j["mu"].get<double>();
  if (j.contains("nu")) p.nu = j["nu"].get<double>();
  if (j.contains("kappa")) p.kappa = j["kappa"].get<double>();
  if (j.contains("sigma")) p.sigma = j["sigma"].get<double>();
  if (j.contains("gamma_star")) p.gamma_star = j["gamma_star"].get<double>();
  if (j.contains("rho_star")) p.rho_star = j["rho_star"].get<double>();
  if (j.contains("dimension")) p.dimension = j["dimension"].get<int>();
  validate(p);
  return p;
}

FluidParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open parameter file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return params_from_json_text(ss.str());
}

}  // namespace nsk
