#pragma once
// Frequency-side symbols of the half-space resolvent problem: the roots
// omega_lambda, t_j, the auxiliary symbols l_j, a, p_j, q_j, r_l, the
// Lopatinskii determinant M and the multiplier m, plus the boundary
// coefficient symbols theta_j and n_{J1}, n_{J2}^l entering the solution
// formulas. Everything is templated on the scalar type so dual numbers
// (derivatives) and long double (reference precision) reuse one code path.

#include <array>
#include <stdexcept>
#include <vector>

#include "nsk/dual.hpp"
#include "nsk/params.hpp"

namespace nsk {

struct SymbolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class C>
struct SymbolSet {
  C om, t1, t2;        // square roots
  C l1, l2;            // sixth-order symbols
  C a, p1, p2, q1, q2; // first-order symbols
  C r1, r2;            // kernel-derivative coefficients
  C bigM;              // Lopatinskii determinant
  C m;                 // 2 mu om l1 l2 / (kappa M)
};

// Core evaluation from |xi'|^2 and lambda. The symbols depend on xi' only
// through |xi'|^2, so derivative seeding happens in the caller by building
// xi2 from the components.
template <class C>
SymbolSet<C> eval_symbol_set(const C& xi2, const C& lambda, const FluidParams& p,
                             const DerivedConstants& c) {
  const C s1 = promote<C>(c.s1);
  const C s2 = promote<C>(c.s2);
  // Promote every real coefficient so the same body instantiates for plain
  // complex, complex<long double>, and nested dual scalars.
  const C mu = promote<C>(Complex(p.mu, 0.0));
  const C kappa = promote<C>(Complex(p.kappa, 0.0));
  const C sigma = promote<C>(Complex(p.sigma, 0.0));
  const C mui = promote<C>(Complex(1.0 / p.mu, 0.0));
  const C two = promote<C>(Complex(2.0, 0.0));
  const C three = promote<C>(Complex(3.0, 0.0));
  const C four = promote<C>(Complex(4.0, 0.0));

  SymbolSet<C> S;
  S.om = sqrt(xi2 + lambda * mui);
  S.t1 = sqrt(xi2 + s1 * lambda);
  S.t2 = sqrt(xi2 + s2 * lambda);
  const C tsum = S.t2 + S.t1;
  const C cubic = S.t2 * S.t2 + S.t2 * S.t1 + S.t1 * S.t1 - xi2;
  auto lfrak = [&](const C& s, const C& t) {
    return lambda * t * (t + S.om) * cubic * (mui * mui)
        + four * S.om * xi2 * (s * t * S.om * (t + S.om) - (s - mui) * S.t1 * S.t2 * tsum);
  };
  S.l1 = lfrak(s1, S.t1);
  S.l2 = lfrak(s2, S.t2);
  S.a = tsum / (kappa * (s2 - s1));
  S.p1 = (four * s1 - three * mui) * S.om + S.t1 * mui;
  S.p2 = (four * s2 - three * mui) * S.om + S.t2 * mui;
  S.q1 = (two * s1 - mui) * S.om + S.t1 * mui;
  S.q2 = (two * s2 - mui) * S.om + S.t2 * mui;
  S.r1 = (s1 - mui) * tsum / ((s2 - s1) * (S.t1 + S.om));
  S.r2 = (s2 - mui) * tsum / ((s2 - s1) * (S.t2 + S.om));
  const C l12 = S.l1 * S.l2;
  S.bigM = two * mu * S.om * lambda * l12 / kappa
      + sigma * xi2 * l12 / kappa
      + sigma * xi2 * S.t1 * S.t2 * (S.om * S.om + xi2) * S.a
            * (s2 * S.l2 * S.q1 - s1 * S.l1 * S.q2);
  S.m = two * mu * S.om * l12 / (kappa * S.bigM);
  return S;
}

// ---------------------------------------------------------------------------
// Double precision record with boundary coefficient symbols.

struct ModeSymbols {
  Complex omega, t1, t2;
  Complex l1, l2, a, p1, p2, q1, q2, r1, r2;
  Complex bigM, m_frak;
  Complex theta1, theta2;                   // density coefficients
  std::vector<Complex> nJ1;                 // length N; [N-1] is the normal row
  std::vector<std::array<Complex, 2>> nJ2;  // N x 2, kernel M_l weights
  bool roots_positive = true;               // Re > 0 for omega, t1, t2
};

inline std::array<Complex, 3> eval_roots(const SectorPoint& pt, const DerivedConstants& c,
                                         const FluidParams& p, bool* positive = nullptr) {
  if (pt.lambda == Complex(0.0, 0.0)) throw SymbolError("eval_roots: lambda = 0");
  const Complex xi2(pt.xi_norm2(), 0.0);
  auto S = eval_symbol_set<Complex>(xi2, pt.lambda, p, c);
  bool pos = S.om.real() > 0.0 && S.t1.real() > 0.0 && S.t2.real() > 0.0;
  if (positive) *positive = pos;
  return {S.om, S.t1, S.t2};
}

inline ModeSymbols eval_symbols(const SectorPoint& pt, const DerivedConstants& c,
                                const FluidParams& p) {
  if (pt.lambda == Complex(0.0, 0.0)) throw SymbolError("eval_symbols: lambda = 0");
  const int N = static_cast<int>(pt.xi_prime.size()) + 1;
  const double xi2 = pt.xi_norm2();
  auto S = eval_symbol_set<Complex>(Complex(xi2, 0.0), pt.lambda, p, c);
  if (std::abs(S.bigM) < 1e-300)
    throw SymbolError("eval_symbols: singular Lopatinskii determinant");

  ModeSymbols out;
  out.omega = S.om; out.t1 = S.t1; out.t2 = S.t2;
  out.l1 = S.l1; out.l2 = S.l2; out.a = S.a;
  out.p1 = S.p1; out.p2 = S.p2; out.q1 = S.q1; out.q2 = S.q2;
  out.r1 = S.r1; out.r2 = S.r2;
  out.bigM = S.bigM; out.m_frak = S.m;
  out.roots_positive = S.om.real() > 0.0 && S.t1.real() > 0.0 && S.t2.real() > 0.0;

  const Complex s1 = c.s1, s2 = c.s2;
  const double mu = p.mu;
  const Complex w2x = S.om * S.om + xi2;
  out.theta1 = S.t1 * s1 * s2 * (S.t1 + S.om) * w2x / (mu * S.l1);
  out.theta2 = s1 * s2 * S.t1 * S.t1 * (S.t1 + S.om) * w2x / (mu * S.l1);

  const Complex I(0.0, 1.0);
  const Complex tt = S.t1 * S.t2;
  const std::array<Complex, 2> s = {s1, s2};
  const std::array<Complex, 2> t = {S.t1, S.t2};
  const std::array<Complex, 2> l = {S.l1, S.l2};
  const std::array<Complex, 2> pp = {S.p1, S.p2};
  const std::array<Complex, 2> qq = {S.q1, S.q2};

  out.nJ1.assign(N, Complex(0.0, 0.0));
  out.nJ2.assign(N, {Complex(0.0, 0.0), Complex(0.0, 0.0)});
  for (int j = 0; j < N - 1; ++j) {
    const Complex ixj = I * pt.xi_prime[static_cast<size_t>(j)];
    Complex v = ixj / (2.0 * mu * S.om * S.om);
    for (int li = 0; li < 2; ++li) {
      const double sgn = li == 0 ? 1.0 : -1.0;  // (-1)^{l+1}
      v += sgn * ixj * tt * w2x * S.a * pp[li] / (2.0 * mu * S.om * S.om * s[li] * l[li]);
      out.nJ2[j][li] = -sgn * ixj * tt * w2x * s1 * s2 * (t[li] + S.om) / (mu * s[li] * l[li]);
    }
    out.nJ1[j] = v;
  }
  {
    Complex v = 1.0 / (2.0 * mu * S.om);
    for (int li = 0; li < 2; ++li) {
      const double sgn = li == 0 ? 1.0 : -1.0;
      v += sgn * tt * w2x * S.a * qq[li] / (2.0 * mu * S.om * s[li] * l[li]);
      out.nJ2[N - 1][li] = sgn * tt * w2x * s1 * s2 * t[li] * (t[li] + S.om) / (mu * s[li] * l[li]);
    }
    out.nJ1[N - 1] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernels. M0(x) = (e^{-t2 x} - e^{-t1 x})/(t2 - t1) and
// M_j(x) = (e^{-t_j x} - e^{-om x})/(t2 - t1). Near-coincident exponents are
// evaluated through phi1(z) = (e^z - 1)/z to avoid catastrophic cancellation.

enum class Kernel { ExpT1, ExpT2, ExpOmega, M0, M1, M2 };

namespace detail {
template <class C>
C phi1_series(const C& z) {
  // |z| < 1e-4: five terms leave a relative error ~ |z|^5/720.
  const C c1 = promote<C>(Complex(1.0, 0.0));
  const C c2 = promote<C>(Complex(0.5, 0.0));
  const C c3 = promote<C>(Complex(1.0 / 6.0, 0.0));
  const C c4 = promote<C>(Complex(1.0 / 24.0, 0.0));
  const C c5 = promote<C>(Complex(1.0 / 120.0, 0.0));
  return c1 + z * (c2 + z * (c3 + z * (c4 + z * c5)));
}

// (e^{-b x} - e^{-a x})/(b - a), switching representation on the gap size.
template <class C>
C divided_exp(const C& a, const C& b, double x) {
  const C px = promote<C>(Complex(x, 0.0));
  const C gap = (a - b) * px;
  if (std::abs(value_of(gap)) < 1e-4) {
    // -x e^{-a x} phi1((a-b) x)
    return -px * exp(-(a * px)) * phi1_series(gap);
  }
  return (exp(-(b * px)) - exp(-(a * px))) / (b - a);
}
}  // namespace detail

template <class C>
C eval_kernel(const SymbolSet<C>& S, Kernel kind, double x) {
  const C px = promote<C>(Complex(x, 0.0));
  switch (kind) {
    case Kernel::ExpT1: return exp(-(S.t1 * px));
    case Kernel::ExpT2: return exp(-(S.t2 * px));
    case Kernel::ExpOmega: return exp(-(S.om * px));
    case Kernel::M0: return detail::divided_exp(S.t1, S.t2, x);
    // M_j = r_j * (e^{-t_j x} - e^{-om x})/(t_j - om); r_j carries the
    // (t_j - om)/(t2 - t1) rescaling without forming the small difference.
    case Kernel::M1: return S.r1 * detail::divided_exp(S.om, S.t1, x);
    case Kernel::M2: return S.r2 * detail::divided_exp(S.om, S.t2, x);
  }
  throw SymbolError("eval_kernel: bad kind");
}

inline Complex eval_kernel(const ModeSymbols& sym, Kernel kind, double x) {
  SymbolSet<Complex> S;
  S.om = sym.omega; S.t1 = sym.t1; S.t2 = sym.t2; S.r1 = sym.r1; S.r2 = sym.r2;
  return eval_kernel<Complex>(S, kind, x);
}

}  // namespace nsk
