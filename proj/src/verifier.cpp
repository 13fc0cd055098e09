#include "nsk/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nsk {

namespace {

template <class C>
C pow_int(C base, int power) {
  if (power == 0) return promote<C>(Complex(1.0, 0.0));
  bool inv = power < 0;
  int k = inv ? -power : power;
  C r = base;
  for (int i = 1; i < k; ++i) r = r * base;
  return inv ? promote<C>(Complex(1.0, 0.0)) / r : r;
}

template <class C>
C eval_sym(const std::string& id, int power, const FluidParams& p,
           const DerivedConstants& c, const C& x1, const C* x2, const C& lambda) {
  C xi2 = x1 * x1;
  if (x2) xi2 += (*x2) * (*x2);
  if (id == "xi2") return pow_int(xi2, power);
  auto S = eval_symbol_set<C>(xi2, lambda, p, c);
  C base;
  if (id == "omega") base = S.om;
  else if (id == "t1") base = S.t1;
  else if (id == "t2") base = S.t2;
  else if (id == "a") base = S.a;
  else if (id == "p1") base = S.p1;
  else if (id == "p2") base = S.p2;
  else if (id == "q1") base = S.q1;
  else if (id == "q2") base = S.q2;
  else if (id == "l1") base = S.l1;
  else if (id == "l2") base = S.l2;
  else if (id == "M") base = S.bigM;
  else if (id == "Minv") base = promote<C>(Complex(1.0, 0.0)) / S.bigM;
  else if (id == "m") base = S.m;
  else throw SymbolError("unknown symbol id: " + id);
  return pow_int(base, power);
}

using C0 = Complex;
using C1 = Dual<C0>;
using C2 = Dual<C1>;
using C3 = Dual<C2>;

}  // namespace

Complex symbol_derivative(const std::string& id, int power, const FluidParams& p,
                          const DerivedConstants& c, const std::vector<double>& xi,
                          Complex lambda, int a1, int a2, int n) {
  if (a1 + a2 > 2 || n > 1 || a1 < 0 || a2 < 0 || n < 0)
    throw SymbolError("symbol_derivative: unsupported order");
  if (a2 > 0 && xi.size() < 2)
    throw SymbolError("symbol_derivative: a2 > 0 needs two tangential components");
  const double x1 = xi.empty() ? 0.0 : xi[0];
  const double x2v = xi.size() > 1 ? xi[1] : 0.0;
  const bool has2 = xi.size() > 1;
  const double tau = lambda.imag();
  const Complex I(0.0, 1.0);
  const int D = a1 + a2 + n;

  // Build the derivative-variable list: a1 copies of xi1, a2 of xi2, n of tau.
  // Each occupies one dual nesting level, outermost first.
  std::vector<int> vars;  // 0 = xi1, 1 = xi2, 2 = tau
  for (int i = 0; i < a1; ++i) vars.push_back(0);
  for (int i = 0; i < a2; ++i) vars.push_back(1);
  if (n) vars.push_back(2);

  auto finish = [&](Complex d) { return n ? Complex(tau, 0.0) * d : d; };

  if (D == 0) {
    C0 xc1(x1, 0.0), xc2(x2v, 0.0);
    return eval_sym<C0>(id, power, p, c, xc1, has2 ? &xc2 : nullptr, lambda);
  }

  if (D == 1) {
    C1 xc1(C0(x1, 0.0)), xc2(C0(x2v, 0.0)), lam(lambda);
    if (vars[0] == 0) xc1.d = C0(1.0, 0.0);
    else if (vars[0] == 1) xc2.d = C0(1.0, 0.0);
    else lam.d = I;  // d lambda / d tau = i
    C1 r = eval_sym<C1>(id, power, p, c, xc1, has2 ? &xc2 : nullptr, lam);
    return finish(r.d);
  }

  if (D == 2) {
    C2 xc1{C1{C0(x1, 0.0)}}, xc2{C1{C0(x2v, 0.0)}}, lam{C1{C0(lambda)}};
    auto seed = [&](int v, int level) {
      // level 0 = outer dual part, level 1 = inner dual part
      C2* target = v == 0 ? &xc1 : (v == 1 ? &xc2 : &lam);
      const C0 one = v == 2 ? I : C0(1.0, 0.0);
      if (level == 0) target->d.v = one;
      else target->v.d = one;
    };
    seed(vars[0], 0);
    seed(vars[1], 1);
    C2 r = eval_sym<C2>(id, power, p, c, xc1, has2 ? &xc2 : nullptr, lam);
    return finish(r.d.d);
  }

  // D == 3
  C3 xc1{C2{C1{C0(x1, 0.0)}}}, xc2{C2{C1{C0(x2v, 0.0)}}}, lam{C2{C1{C0(lambda)}}};
  auto seed3 = [&](int v, int level) {
    C3* target = v == 0 ? &xc1 : (v == 1 ? &xc2 : &lam);
    const C0 one = v == 2 ? I : C0(1.0, 0.0);
    if (level == 0) target->d.v.v = one;
    else if (level == 1) target->v.d.v = one;
    else target->v.v.d = one;
  };
  for (int k = 0; k < 3; ++k) seed3(vars[static_cast<size_t>(k)], k);
  C3 r = eval_sym<C3>(id, power, p, c, xc1, has2 ? &xc2 : nullptr, lam);
  return finish(r.d.d.d);
}

Complex symbol_derivative_fd(const std::string& id, int power, const FluidParams& p,
                             const DerivedConstants& c, const std::vector<double>& xi,
                             Complex lambda, bool wrt_tau) {
  // Five-point central stencil.
  auto f = [&](double h) {
    std::vector<double> x = xi;
    Complex lam = lambda;
    if (wrt_tau) lam += Complex(0.0, h);
    else x[0] += h;
    C0 xc1(x[0], 0.0), xc2(x.size() > 1 ? x[1] : 0.0, 0.0);
    return eval_sym<C0>(id, power, p, c, xc1, x.size() > 1 ? &xc2 : nullptr, lam);
  };
  const double scale = wrt_tau ? std::max(1.0, std::abs(lambda.imag()))
                               : std::max(1.0, std::abs(xi[0]));
  const double h = 1e-5 * scale;
  Complex d = (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
  if (wrt_tau) d *= Complex(lambda.imag(), 0.0);  // tau d_tau
  return d;
}

namespace {

// Deterministic shell sampling: points with |lambda|^{1/2} + |xi'| near r.
struct ShellPoint {
  double xi;
  Complex lambda;
};

std::vector<ShellPoint> shell_points(double r, int count, double epsilon,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uu(0.05, 0.95);
  std::uniform_real_distribution<double> ua(-1.0, 1.0);
  const double arg_max = M_PI - epsilon - 0.01;
  std::vector<ShellPoint> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = uu(rng);
    const double xi = u * r;
    const double mod = (1.0 - u) * r;
    pts.push_back({xi, std::polar(mod * mod, ua(rng) * arg_max)});
  }
  return pts;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ClassScanReport verify_class_membership(const ClassSpec& spec, const Sector& sector,
                                        const ClassScanGrid& grid, const FluidParams& p,
                                        const DerivedConstants& c) {
  if (grid.n_shells < 6) throw SymbolError("verify_class_membership: need >= 6 shells");
  ClassScanReport rep;
  rep.symbol = spec.symbol_id;
  rep.spec = spec;
  rep.epsilon = sector.epsilon;
  std::mt19937_64 rng(grid.seed);

  for (int k = 0; k < grid.n_shells; ++k) {
    const double r = grid.shell0 * std::pow(2.0, k);
    rep.shell_radii.push_back(r);
    auto pts = shell_points(r, grid.pts_per_shell, sector.epsilon, rng);
    for (int a = 0; a <= spec.max_alpha; ++a) {
      for (int n = 0; n <= spec.tau_order; ++n) {
        const std::string key = std::to_string(a) + ",0," + std::to_string(n);
        double cmax = 0.0;
        int used = 0;
        for (const auto& q : pts) {
          if (std::abs(q.lambda) < sector.lambda0) continue;
          if (n == 1 && std::abs(q.lambda.imag()) < 1e-8 * std::abs(q.lambda)) continue;
          ++used;
          const double rr = std::sqrt(std::abs(q.lambda)) + q.xi;
          double w = std::pow(rr, spec.order - (spec.class_type == 1 ? a : 0));
          if (spec.class_type == 2) w *= std::pow(q.xi, -static_cast<double>(a));
          if (spec.lam_xi_pow != 0)
            w *= std::pow(std::abs(q.lambda) + q.xi, spec.lam_xi_pow);
          const Complex d = symbol_derivative(spec.symbol_id, spec.power, p, c,
                                              {q.xi}, q.lambda, a, 0, n);
          cmax = std::max(cmax, std::abs(d) / w);
        }
        // Shells entirely below lambda0 carry no information; mark and skip.
        rep.shell_constants[key].push_back(used > 0 ? cmax : -1.0);
      }
    }
  }

  rep.pass = true;
  for (const auto& [key, vals] : rep.shell_constants) {
    std::vector<double> valid;
    for (double v : vals)
      if (v >= 0.0) valid.push_back(v);
    if (valid.empty()) { rep.pass = false; continue; }
    double vmax = *std::max_element(valid.begin(), valid.end());
    double vmed = median(valid);
    const double spread = vmed > 0.0 ? vmax / vmed : (vmax > 0.0 ? 1e300 : 1.0);
    rep.worst_spread = std::max(rep.worst_spread, spread);
    if (spread > 10.0) rep.pass = false;
  }
  return rep;
}

double symbol_loglog_slope(const std::string& id, int power, const Sector& sector,
                           const ClassScanGrid& grid, const FluidParams& p,
                           const DerivedConstants& c) {
  // One directional pattern reused on every shell, so the slope reflects
  // the radial scaling alone and not sampling noise.
  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> uu(0.05, 0.95);
  std::uniform_real_distribution<double> ua(-1.0, 1.0);
  const double arg_max = M_PI - sector.epsilon - 0.01;
  std::vector<std::pair<double, double>> pattern;
  for (int i = 0; i < grid.pts_per_shell; ++i)
    pattern.emplace_back(uu(rng), ua(rng) * arg_max);
  std::vector<double> lx, ly;
  for (int k = 0; k < grid.n_shells; ++k) {
    const double r = grid.shell0 * std::pow(2.0, k);
    double vmax = 0.0;
    for (const auto& [u, arg] : pattern) {
      const double xi = u * r;
      const Complex lam = std::polar((1.0 - u) * r * (1.0 - u) * r, arg);
      vmax = std::max(vmax, std::abs(symbol_derivative(id, power, p, c, {xi},
                                                       lam, 0, 0, 0)));
    }
    lx.push_back(std::log(r));
    ly.push_back(std::log(vmax));
  }
  // Least-squares slope.
  const double nn = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
  }
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

DetScanReport scan_lopatinskii_lower_bound(const FluidParams& p, const DerivedConstants& c,
                                           const Sector& sector, const DetScanGrid& grid) {
  DetScanReport rep;
  rep.min_ratio = 1e300;
  const double arg_max = M_PI - sector.epsilon - 0.01;

  std::map<int, double> shell_min;  // floor(log2 |lambda|) -> min ratio
  for (int i = 0; i < grid.n_xi; ++i) {
    const double fx = grid.n_xi == 1 ? 0.0 : double(i) / (grid.n_xi - 1);
    const double xi = grid.xi_min * std::pow(grid.xi_max / grid.xi_min, fx);
    for (int j = 0; j < grid.n_mod; ++j) {
      const double fm = grid.n_mod == 1 ? 0.0 : double(j) / (grid.n_mod - 1);
      const double mod = grid.mod_min * std::pow(grid.mod_max / grid.mod_min, fm);
      for (int k = 0; k < grid.n_arg; ++k) {
        const double fa = grid.n_arg == 1 ? 0.0 : -1.0 + 2.0 * k / (grid.n_arg - 1);
        SectorPoint pt;
        pt.xi_prime = {xi};
        pt.lambda = std::polar(mod, fa * arg_max);
        auto S = eval_symbol_set<Complex>(Complex(xi * xi, 0.0), pt.lambda, p, c);
        const double rr = std::sqrt(mod) + xi;
        const double ratio = std::abs(S.bigM) / ((mod + xi) * std::pow(rr, 13));
        rep.points.push_back({xi, mod, fa * arg_max, ratio});
        if (ratio < rep.min_ratio) {
          rep.min_ratio = ratio;
          rep.argmin = pt;
        }
        const int sh = static_cast<int>(std::floor(std::log2(mod)));
        auto it = shell_min.find(sh);
        if (it == shell_min.end() || ratio < it->second) shell_min[sh] = ratio;
      }
    }
  }
  for (const auto& [sh, v] : shell_min) {
    rep.shell_lambda.push_back(std::pow(2.0, sh));
    rep.shell_min_ratio.push_back(v);
  }
  // Empirical lambda0: smallest shell edge above which per-shell mins stay
  // within a factor 100 of each other.
  rep.empirical_lambda0 = rep.shell_lambda.empty() ? 0.0 : rep.shell_lambda.back();
  for (size_t s = 0; s < rep.shell_lambda.size(); ++s) {
    double lo = 1e300, hi = 0.0;
    for (size_t t = s; t < rep.shell_lambda.size(); ++t) {
      lo = std::min(lo, rep.shell_min_ratio[t]);
      hi = std::max(hi, rep.shell_min_ratio[t]);
    }
    if (hi <= 100.0 * lo) {
      rep.empirical_lambda0 = rep.shell_lambda[s];
      break;
    }
  }
  rep.pass = rep.min_ratio > 0.0;
  return rep;
}

AsymptoticsReport check_high_frequency_asymptotics(const FluidParams& p,
                                                   const DerivedConstants& c,
                                                   double epsilon, std::uint64_t seed) {
  AsymptoticsReport rep;
  rep.lambda0 = {1e2, 1.6e3, 2.56e4, 4.096e5};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double arg_max = M_PI - epsilon - 0.01;

  for (double l0 : rep.lambda0) {
    double dt = 0.0, dl = 0.0, da = 0.0, dM = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double mod = l0 * std::pow(4.0, u01(rng));
      const double ratio = std::pow(100.0, u01(rng));  // |xi'|/|lambda| in [1, 100]
      const double xi = ratio * mod;
      const Complex lam = std::polar(mod, (2.0 * u01(rng) - 1.0) * arg_max);
      auto S = eval_symbol_set<Complex>(Complex(xi * xi, 0.0), lam, p, c);
      dt = std::max(dt, std::abs(S.t1 / xi - 1.0));
      dt = std::max(dt, std::abs(S.t2 / xi - 1.0));
      const double l_ref = 8.0 / p.mu * std::pow(xi, 6);
      dl = std::max(dl, std::abs(S.l1 / l_ref - 1.0));
      dl = std::max(dl, std::abs(S.l2 / l_ref - 1.0));
      const Complex a_ref = 2.0 / p.kappa / (c.s2 - c.s1) * xi;
      da = std::max(da, std::abs(S.a / a_ref - 1.0));
      const Complex M_ref = 64.0 / (p.mu * p.mu * p.kappa) * std::pow(xi, 13)
          * (2.0 * p.mu * lam + p.sigma * xi);
      dM = std::max(dM, std::abs(S.bigM / M_ref - 1.0));
    }
    rep.dev_t.push_back(dt);
    rep.dev_l.push_back(dl);
    rep.dev_a.push_back(da);
    rep.dev_M.push_back(dM);
  }
  rep.pass = true;
  auto check = [&](const std::vector<double>& dev) {
    for (size_t i = 0; i + 1 < dev.size(); ++i) {
      // Deviations are O(1/lambda_0) at the worst admissible frequency
      // ratio, so a x16 cutoff should shrink them by about x16.
      const double shrink = dev[i] / dev[i + 1];
      if (shrink < 8.0 || shrink > 32.0) rep.pass = false;
    }
  };
  check(rep.dev_t);
  check(rep.dev_l);
  check(rep.dev_a);
  check(rep.dev_M);
  return rep;
}

double estimate_eps_star(const FluidParams& p, const DerivedConstants& c) {
  ClassScanGrid grid;
  grid.pts_per_shell = 12;
  std::vector<double> candidates;
  for (double e = c.eps_tilde_star + 0.02; e < M_PI / 2.0 - 0.02; e += 0.02)
    candidates.push_back(e);
  std::vector<bool> ok(candidates.size(), false);
  for (size_t i = 0; i < candidates.size(); ++i) {
    Sector sec{candidates[i], 0.0};
    ClassSpec spec{"l1", -1, -6.0, 1, 0, 2, 1};
    ClassSpec spec2{"l2", -1, -6.0, 1, 0, 2, 1};
    ok[i] = verify_class_membership(spec, sec, grid, p, c).pass
        && verify_class_membership(spec2, sec, grid, p, c).pass;
  }
  // Smallest epsilon from which everything above also passes.
  for (size_t i = 0; i < candidates.size(); ++i) {
    bool all = true;
    for (size_t j = i; j < candidates.size(); ++j) all = all && ok[j];
    if (all) return candidates[i];
  }
  return M_PI / 2.0 - 0.02;
}

}  // namespace nsk
