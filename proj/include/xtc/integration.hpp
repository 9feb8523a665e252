#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xtc/atlas.hpp"
#include "xtc/differential.hpp"

namespace xtc {

Tensor integrate(const Atlas& atlas, const TensorField& f, double t = 0.0);
// Integral over the boundary with its induced measure; zero-dimensional
// boundaries use the counting measure.
Tensor integrate_boundary(const Atlas& atlas, const Calculus& calc,
                          const std::function<Tensor(const BoundaryNode&)>& integrand,
                          TensorShape shape, double t = 0.0);
// Oriented endpoint difference f(b) - f(a) along a path chart.
Tensor endpoint_difference(const Atlas& atlas, const TensorField& f, double t = 0.0);

struct NamedTerm {
  std::string name;
  Tensor value;
};

// lhs - rhs with rel = abs / max(1, |lhs|, |rhs|).
struct IdentityResidual {
  Tensor lhs;
  Tensor rhs;
  double abs = 0.0;
  double rel = 0.0;
  std::vector<NamedTerm> terms;

  const Tensor& term(const std::string& name) const;
};

IdentityResidual make_residual(Tensor lhs, Tensor rhs, std::vector<NamedTerm> terms = {});

// int Div_M T = int_dM T.t + int T.kappa
IdentityResidual stokes_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                 double time = 0.0);
// int Curl T = int_dM T.tau (dim M = 2)
IdentityResidual circulation_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                      double time = 0.0);
// int S:Div_M T = -int T:grad_M S + int_dM (S:T).t + int (S:T).kappa
IdentityResidual integration_by_parts_residual(const Calculus& calc, const Atlas& atlas,
                                               const TensorField& s, const TensorField& t,
                                               double time = 0.0);
// int_gamma grad_M T . w = T(b) - T(a) with w the unit tangent along the path chart.
IdentityResidual path_ftc_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                   double time = 0.0);
// a(T, S) = int grad_cov T . grad_cov S against l(S) = int_dM S.q + int S.f
IdentityResidual weak_form_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                    const TensorField& s, const TensorField& f,
                                    const TensorField* q = nullptr, double time = 0.0);

}  // namespace xtc
