#include <doctest.h>

#include "nsk/evolution.hpp"

using namespace nsk;

namespace {
FluidParams set_a() { return {1.0, 3.0, 1.0, 1.0, 0.0, 1.0, 2}; }

EvolutionConfig base_config() {
  EvolutionConfig cfg;
  cfg.xi_prime = {0.7};
  cfg.gamma = 1.5;
  cfg.horizon = 16.0;
  cfg.time_samples = 2048;
  return cfg;
}

// Smooth forcing switched on at t0: zeta(t) = (t - t0)^2 e^{-decay (t - t0)}.
TimeSignal delayed_bump(double t0, double decay) {
  return [t0, decay](double t) -> Complex {
    if (t <= t0) return Complex(0.0, 0.0);
    const double s = t - t0;
    return Complex(s * s * std::exp(-decay * s), 0.0);
  };
}
}  // namespace

TEST_CASE("zero forcing yields the zero trajectory") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  cfg.time_samples = 512;
  auto traj = evolve_boundary_forced(cfg, [](double) { return Complex(0.0, 0.0); }, p, c);
  double hmax = 0.0;
  for (const auto& v : traj.h) hmax = std::max(hmax, std::abs(v));
  CHECK(hmax < 1e-13);
}

TEST_CASE("causality: the response is quiet before the forcing starts") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  cfg.time_samples = 4096;
  const double t0 = cfg.horizon / 4.0;
  auto traj = evolve_boundary_forced(cfg, delayed_bump(t0, 1.5), p, c);
  double pre = 0.0, post = 0.0;
  for (size_t k = 0; k < traj.t.size(); ++k) {
    const double a = std::abs(traj.h[k]);
    if (traj.t[k] < t0 - 0.25)
      pre = std::max(pre, a);
    else if (traj.t[k] < cfg.horizon / 2.0)
      post = std::max(post, a);
  }
  CHECK(post > 1e-4);
  CHECK(pre < 1e-6 * post);
}

TEST_CASE("trajectory matches the adaptive contour oracle") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  cfg.time_samples = 4096;
  const double t0 = cfg.horizon / 4.0, decay = 1.5;
  auto traj = evolve_boundary_forced(cfg, delayed_bump(t0, decay), p, c);
  // The transform of (t - t0)^2 e^{-decay (t - t0)} 1_{t > t0} is
  // e^{-lambda t0} 2 / (decay + lambda)^3.
  auto zhat = [t0, decay](Complex lam) {
    const Complex d = decay + lam;
    return std::exp(-lam * t0) * 2.0 / (d * d * d);
  };
  const size_t K = traj.t.size();
  for (double t : {0.3 * cfg.horizon, 0.45 * cfg.horizon}) {
    const size_t k = static_cast<size_t>(std::llround(t / cfg.horizon * K));
    const double ref = bromwich_point(zhat, traj.t[k], cfg.gamma, cfg.xi_prime, p, c);
    CHECK(std::abs(traj.h[k].real() - ref) < 1e-6 * std::max(1e-3, std::abs(ref)));
    CHECK(std::abs(traj.h[k].imag()) < 1e-8);
  }
}

TEST_CASE("result is independent of the contour abscissa") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  cfg.time_samples = 4096;
  const double gap =
      contour_independence_gap(cfg, delayed_bump(cfg.horizon / 4.0, 1.5), p, c, 1.25);
  CHECK(gap < 1e-8);
}

TEST_CASE("regularity quotient is finite and stable across signals") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  std::vector<TimeSignal> signals = {
      delayed_bump(cfg.horizon / 4.0, 1.5),
      delayed_bump(cfg.horizon / 8.0, 0.8),
      [](double t) { return Complex(std::exp(-t) * std::sin(2.0 * t), 0.0); },
  };
  std::vector<double> ratios;
  for (const auto& sig : signals) {
    auto traj = evolve_boundary_forced(cfg, sig, p, c);
    auto mr = maximal_regularity_ratio(traj, p, c);
    CHECK(mr.rhs > 0.0);
    CHECK(mr.lhs > 0.0);
    CHECK(std::isfinite(mr.ratio));
    ratios.push_back(mr.ratio);
  }
  const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*mx / *mn < 10.0);
}

TEST_CASE("configuration validation") {
  auto p = set_a();
  auto c = derive_constants(p);
  auto cfg = base_config();
  cfg.time_samples = 1000;  // not a power of two
  CHECK_THROWS(evolve_boundary_forced(cfg, delayed_bump(1.0, 1.0), p, c));
  cfg = base_config();
  cfg.gamma = 0.0;  // must exceed the sector abscissa
  CHECK_THROWS(evolve_boundary_forced(cfg, delayed_bump(1.0, 1.0), p, c));
}

TEST_CASE("gamma1 surrogate") {
  CHECK(gamma1_surrogate(0.1) == doctest::Approx(1.5));
  CHECK(gamma1_surrogate(4.0) == doctest::Approx(6.0));
}
