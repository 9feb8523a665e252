#pragma once

#include <string>
#include <vector>

#include "xtc/integration.hpp"

namespace xtc {

// Largest leaf-norm of a field over the quadrature nodes of an atlas.
double max_norm_over_nodes(const Atlas& atlas, const TensorField& f, double t = 0.0);

// ---- Euler flow on a surface ----

struct FlowState {
  TensorField velocity;  // tangential rank-1 field u
  TensorField pressure;  // scalar p
  TensorField density;   // scalar rho
};

struct EulerResidual {
  double momentum = 0.0;         // max |d_t u + grad_cov u . u + grad_M p|
  double divergence = 0.0;       // max |div_M u|
  double boundary_slip = 0.0;    // max |u . t| on the boundary
  double divergence_form = 0.0;  // max |d_t u + P Div_M(u (x) u + p P)|
  double form_identity = 0.0;    // max |P Div_M(u (x) u + p P) - grad_cov u . u - grad_M p|
};

EulerResidual euler_residual(const Calculus& calc, const Atlas& atlas, const FlowState& state,
                             double t = 0.0);
// J = int rho u
Tensor extrinsic_momentum(const Atlas& atlas, const FlowState& state, double t = 0.0);
// int P u = -int div_M(P u) r + int_dM (u.t) r
IdentityResidual tangent_velocity_residual(const Calculus& calc, const Atlas& atlas,
                                           const TensorField& u, double t = 0.0);
// int p kappa + int_dM p t  against  -sum_i int (B_i(u).u) n_i
IdentityResidual force_balance_residual(const Calculus& calc, const Atlas& atlas, const FlowState& state,
                                        double t = 0.0);

// ---- Stress fields ----

struct GeneratorIndex {
  int i = 0;
  int j = 1;
  std::string label() const;
};

std::vector<GeneratorIndex> rotation_generators(int dim);
// l_ij = x_i e_j - x_j e_i
TensorField rotation_generator(int dim, GeneratorIndex k);
// omega_ij = e^i (x) P^j - e^j (x) P^i
TensorField generator_projection(const Calculus& calc, GeneratorIndex k);

// F = int_dM sigma(t) + int sigma(kappa) with sigma(v) = v^T : sigma.
Tensor stress_force(const Calculus& calc, const Atlas& atlas, const TensorField& sigma, double t = 0.0);
// m_K = int_dM l_K . sigma(t) + int l_K . sigma(kappa)
Tensor stress_torque(const Calculus& calc, const Atlas& atlas, const TensorField& sigma, GeneratorIndex k,
                     double t = 0.0);
// m_K against int l_K . Div_M sigma-bar - int omega_K . sigma-bar
IdentityResidual torque_equivalence_residual(const Calculus& calc, const Atlas& atlas,
                                             const TensorField& sigma, GeneratorIndex k, double t = 0.0);
// int_dM (l_K:A).t + int (l_K:A).kappa against int l_K:Div_M A - int A . omega_K
IdentityResidual generator_identity_residual(const Calculus& calc, const Atlas& atlas, const TensorField& a,
                                             GeneratorIndex k, double t = 0.0);

struct EquilibriumDiagnostics {
  Vector divergence;                    // Div_M sigma-bar
  std::vector<double> generator_terms;  // omega_K . sigma-bar for each K
  double normal_at_tangential = 0.0;    // max over unit v of |N sigma(P v)|
};

EquilibriumDiagnostics equilibrium_diagnostics(const Calculus& calc, const TensorField& sigma,
                                               std::span<const double> x, double t = 0.0);
double normal_at_tangential(const GeometryFrame& frame, const Tensor& sigma);

// ---- Evolving submanifolds ----

// E = 1/2 int |grad_M T|^2
double dirichlet_energy(const Calculus& calc, const Atlas& atlas, const TensorField& f, double t = 0.0);
// dE/dt from the transport formula
double dirichlet_rate(const Calculus& calc, const Atlas& atlas, const TensorField& f, const TensorField& w,
                      double t = 0.0);
// Central difference of E over atlases moved with w.
double dirichlet_rate_fd(const Calculus& calc, const Atlas& atlas, const TensorField& f, const TensorField& w,
                         double t, double dt);
// d/dt int T against int D_w T + int (div_M w) T, the former by central differences.
IdentityResidual reynolds_residual(const Calculus& calc, const Atlas& atlas, const TensorField& f,
                                   const TensorField& w, double t, double dt);

struct CommutatorResidual {
  double ambient = 0.0;       // grad(D T) - D(grad T) - grad T o grad w
  double submanifold = 0.0;   // grad_M(D T) - D(grad_M T) - grad T o (2C + grad_M w)
  double projected_rate = 0.0;  // P C[w]
  double projector_rate = 0.0;  // D P + 2 C[w]
  double normal_rate = 0.0;     // D n_i + n_i : grad w
};

CommutatorResidual commutator_residuals(const Calculus& calc, const Atlas& atlas, const TensorField& f,
                                        const TensorField& w, double t = 0.0);

}  // namespace xtc
