// Python bindings exposing the mode solver, the collocation oracle
// comparison, and the field-level norms for quick interactive checks.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsk/bvp_oracle.hpp"
#include "nsk/field_solver.hpp"

namespace py = pybind11;
using nsk::Complex;

namespace {

nsk::FluidParams make_params(double mu, double nu, double kappa, double sigma,
                             double gamma_star, double rho_star, int dimension) {
  nsk::FluidParams p{mu, nu, kappa, sigma, gamma_star, rho_star, dimension};
  nsk::validate(p);
  return p;
}

nsk::SectorPoint make_point(const std::vector<double>& xi_prime, Complex lambda) {
  nsk::SectorPoint pt;
  pt.xi_prime = xi_prime;
  pt.lambda = lambda;
  return pt;
}

}  // namespace

PYBIND11_MODULE(nskpy, m) {
  m.doc() = "half-space resolvent laboratory bindings";

  py::class_<nsk::FluidParams>(m, "FluidParams")
      .def(py::init(&make_params), py::arg("mu") = 1.0, py::arg("nu") = 1.0,
           py::arg("kappa") = 2.0, py::arg("sigma") = 1.0, py::arg("gamma_star") = 0.0,
           py::arg("rho_star") = 1.0, py::arg("dimension") = 2)
      .def_readonly("mu", &nsk::FluidParams::mu)
      .def_readonly("nu", &nsk::FluidParams::nu)
      .def_readonly("kappa", &nsk::FluidParams::kappa)
      .def_readonly("sigma", &nsk::FluidParams::sigma)
      .def_readonly("dimension", &nsk::FluidParams::dimension);

  m.def("derive_constants", [](const nsk::FluidParams& p) {
    auto c = nsk::derive_constants(p);
    py::dict d;
    d["alpha"] = c.alpha;
    d["s1"] = c.s1;
    d["s2"] = c.s2;
    d["eps_tilde_star"] = c.eps_tilde_star;
    return d;
  });

  m.def("eval_symbols",
        [](const nsk::FluidParams& p, const std::vector<double>& xi_prime, Complex lambda) {
          auto c = nsk::derive_constants(p);
          auto s = nsk::eval_symbols(make_point(xi_prime, lambda), c, p);
          py::dict d;
          d["omega"] = s.omega;
          d["t1"] = s.t1;
          d["t2"] = s.t2;
          d["a"] = s.a;
          d["p1"] = s.p1;
          d["p2"] = s.p2;
          d["q1"] = s.q1;
          d["q2"] = s.q2;
          d["l1"] = s.l1;
          d["l2"] = s.l2;
          d["M"] = s.bigM;
          d["m"] = s.m_frak;
          return d;
        });

  m.def("solve_mode",
        [](const nsk::FluidParams& p, const std::vector<double>& xi_prime, Complex lambda,
           Complex eta0) {
          auto c = nsk::derive_constants(p);
          auto pt = make_point(xi_prime, lambda);
          auto sol = nsk::solve_mode(pt, eta0, p, c);
          auto ode = nsk::residual_ode(sol, p, {0.1, 0.5, 1.2, 2.5});
          auto bc = nsk::residual_bc(sol, p);
          py::dict d;
          d["h0"] = sol.h0;
          d["decoupled"] = sol.decoupled;
          d["residual_interior"] = ode.max();
          d["residual_boundary"] = bc.max();
          return d;
        },
        py::arg("params"), py::arg("xi_prime"), py::arg("lambda_"),
        py::arg("eta0") = Complex(1.0, 0.0));

  m.def("compare_with_oracle",
        [](const nsk::FluidParams& p, const std::vector<double>& xi_prime, Complex lambda,
           Complex eta0) {
          auto c = nsk::derive_constants(p);
          nsk::CollocationConfig cfg;
          auto cmp = nsk::compare_with_formula(make_point(xi_prime, lambda), eta0, p, c, cfg);
          py::dict d;
          d["gap_rho"] = cmp.gap_rho;
          d["gap_u"] = cmp.gap_u;
          d["gap_h0"] = cmp.gap_h0;
          d["truncation"] = cmp.truncation_estimate;
          return d;
        },
        py::arg("params"), py::arg("xi_prime"), py::arg("lambda_"),
        py::arg("eta0") = Complex(1.0, 0.3));

  m.def("field_norms",
        [](const nsk::FluidParams& p, Complex lambda, int modes, double period,
           double bump_width) {
          auto c = nsk::derive_constants(p);
          nsk::FieldGrid grid;
          grid.dimension = p.dimension;
          grid.modes = modes;
          grid.period = period;
          const size_t M = nsk::mode_count(grid);
          std::vector<Complex> eta(M);
          for (size_t k = 0; k < M; ++k) {
            double r2 = 0.0;
            if (grid.dimension == 3) {
              const double x1 =
                  period * static_cast<double>(k / modes) / modes - period / 2.0;
              const double x2 =
                  period * static_cast<double>(k % modes) / modes - period / 2.0;
              r2 = x1 * x1 + x2 * x2;
            } else {
              const double x1 = period * static_cast<double>(k) / modes - period / 2.0;
              r2 = x1 * x1;
            }
            eta[k] = std::exp(-bump_width * r2);
          }
          auto sol = nsk::solve_field(eta, lambda, p, c, grid);
          auto res = nsk::residual_field(sol, p);
          auto norms = nsk::compute_norms(sol);
          py::dict d;
          d["residual"] = res.max();
          d["parseval_gap"] = nsk::parseval_gap(sol);
          d["solution_norm"] = norms.sum();
          d["data_norm"] = nsk::data_norm_h2(eta, grid);
          return d;
        },
        py::arg("params"), py::arg("lambda_"), py::arg("modes") = 32,
        py::arg("period") = 2.0 * M_PI, py::arg("bump_width") = 4.0);
}
