#pragma once
// Exact x_N-profiles: linear combinations of e^{-t1 x}, e^{-t2 x},
// e^{-om x} and the kernels M0, M1, M2. The basis is closed under
// differentiation via the kernel identities
//   M0' = -t2 M0 - e^{-t1 x},  M_l' = -t_l M_l - r_l e^{-om x},
// and every profile is also a three-term pure exponential sum, which gives
// closed-form L2(0, inf) inner products for the norm computations.

#include <array>
#include <cmath>

#include "nsk/symbols.hpp"

namespace nsk {

struct ExpProfile {
  // Coefficient per basis element, indexed by Kernel order:
  // {ExpT1, ExpT2, ExpOmega, M0, M1, M2}.
  std::array<Complex, 6> c{};

  static constexpr std::array<Kernel, 6> basis = {
      Kernel::ExpT1, Kernel::ExpT2, Kernel::ExpOmega,
      Kernel::M0,    Kernel::M1,    Kernel::M2};

  ExpProfile& operator+=(const ExpProfile& o) {
    for (int i = 0; i < 6; ++i) c[static_cast<size_t>(i)] += o.c[static_cast<size_t>(i)];
    return *this;
  }
  ExpProfile operator*(Complex z) const {
    ExpProfile r = *this;
    for (auto& x : r.c) x *= z;
    return r;
  }
  bool is_zero() const {
    for (const auto& x : c)
      if (x != Complex(0.0, 0.0)) return false;
    return true;
  }
  double max_coeff() const {
    double m = 0.0;
    for (const auto& x : c) m = std::max(m, std::abs(x));
    return m;
  }

  Complex eval(const ModeSymbols& sym, double x) const {
    Complex v(0.0, 0.0);
    for (int i = 0; i < 6; ++i) {
      const auto ci = c[static_cast<size_t>(i)];
      if (ci != Complex(0.0, 0.0)) v += ci * eval_kernel(sym, basis[static_cast<size_t>(i)], x);
    }
    return v;
  }
};

// d/dx within the six-element basis.
inline ExpProfile differentiate_profile(const ExpProfile& f, const ModeSymbols& sym) {
  ExpProfile g;
  g.c[0] = -sym.t1 * f.c[0] - f.c[3];                        // ExpT1 from itself and M0
  g.c[1] = -sym.t2 * f.c[1];                                 // ExpT2
  g.c[2] = -sym.omega * f.c[2] - sym.r1 * f.c[4] - sym.r2 * f.c[5];  // ExpOmega
  g.c[3] = -sym.t2 * f.c[3];                                 // M0
  g.c[4] = -sym.t1 * f.c[4];                                 // M1
  g.c[5] = -sym.t2 * f.c[5];                                 // M2
  return g;
}

inline ExpProfile differentiate_profile(const ExpProfile& f, const ModeSymbols& sym, int order) {
  ExpProfile g = f;
  for (int k = 0; k < order; ++k) g = differentiate_profile(g, sym);
  return g;
}

// Pure exponential representation: rates (t1, t2, om) with coefficients.
// Requires t1 != t2; the divided-difference kernels expand as
//   M0 = (e^{-t2 x} - e^{-t1 x})/(t2-t1),  M_l = (e^{-t_l x} - e^{-om x})/(t2-t1).
struct PureExp {
  std::array<Complex, 3> rate;   // {t1, t2, om}
  std::array<Complex, 3> coeff;
};

inline PureExp to_pure_exp(const ExpProfile& f, const ModeSymbols& sym) {
  const Complex d = sym.t2 - sym.t1;
  PureExp r;
  r.rate = {sym.t1, sym.t2, sym.omega};
  r.coeff[0] = f.c[0] - f.c[3] / d + f.c[4] / d;
  r.coeff[1] = f.c[1] + f.c[3] / d + f.c[5] / d;
  r.coeff[2] = f.c[2] - (f.c[4] + f.c[5]) / d;
  return r;
}

inline PureExp differentiate(const PureExp& f) {
  PureExp g = f;
  for (int i = 0; i < 3; ++i) g.coeff[static_cast<size_t>(i)] *= -f.rate[static_cast<size_t>(i)];
  return g;
}

inline Complex eval(const PureExp& f, double x) {
  Complex v(0.0, 0.0);
  for (int i = 0; i < 3; ++i)
    v += f.coeff[static_cast<size_t>(i)] * std::exp(-f.rate[static_cast<size_t>(i)] * x);
  return v;
}

// Exact squared L2(0, inf) norm: sum_{ij} a_i conj(a_j) / (r_i + conj(r_j)).
inline double l2_norm2(const PureExp& f) {
  Complex s(0.0, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += f.coeff[static_cast<size_t>(i)] * std::conj(f.coeff[static_cast<size_t>(j)])
          / (f.rate[static_cast<size_t>(i)] + std::conj(f.rate[static_cast<size_t>(j)]));
  return std::max(0.0, s.real());
}

// Squared L2 norm of the b-th x_N-derivative of an ExpProfile.
inline double l2_norm2_deriv(const ExpProfile& f, const ModeSymbols& sym, int b) {
  PureExp g = to_pure_exp(f, sym);
  for (int k = 0; k < b; ++k) g = differentiate(g);
  return l2_norm2(g);
}

}  // namespace nsk
