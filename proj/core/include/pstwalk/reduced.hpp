// reduced.hpp
// Closed-form reduced dynamics. Because the walk is bipartite, two steps map
// each part onto itself; restricted to the part holding the initial state the
// effective two-step operator U_eff leaves a small subspace invariant:
//
//   SamePart     U_eff = U2*U1 on H1, basis {init, target, rest-of-part-1}
//   OppositePart U_eff = U1*U2 on H2, basis of four vectors built from the
//                sender column and the receiver row of part 2
//
// On that subspace U_eff is a real orthogonal 3x3 (4x4) matrix that does not
// depend on the walk's state dimension.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "pstwalk/params.hpp"
#include "pstwalk/walk_state.hpp"

namespace pstwalk {

struct ReducedModel {
  WalkParams params;
  Eigen::MatrixXd matrix;           // U_eff in the phi basis, dim x dim
  std::vector<WalkState> basis;     // embedded phi_j
  Eigen::VectorXd init_coords;      // SamePart: |init>; OppositePart: U|init>
  Eigen::VectorXd target_coords;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  Layout layout() const { return params.layout; }

  /// Walk steps consumed before the first application of U_eff (0 or 1).
  std::size_t step_offset() const { return layout() == Layout::OppositePart ? 1 : 0; }

  /// max |M^T M - I|
  double orthogonality_residual() const;
  /// max |<phi_j|phi_k> - delta_jk| in the full space.
  double basis_orthonormality_residual() const;

  /// <phi_j|U^2|phi_k> computed by two structured walk steps.
  Eigen::MatrixXd rebuild_from_walk() const;
  /// max |rebuild_from_walk() - matrix|
  double embedding_residual() const;
  /// Largest norm of the component of U^2 phi_k outside span{phi_j}.
  double subspace_leakage() const;

  /// U_eff^t applied to init_coords.
  Eigen::VectorXd evolve_coords(std::size_t t) const;
  /// |<target|U_eff^t|init>|^2, the fidelity at walk step 2t + step_offset().
  double fidelity_after(std::size_t t) const;
  /// Fidelity at a walk step; exact 0 at wrong-parity steps.
  double fidelity_at_step(std::size_t walk_step) const;
};

/// 3x3 reduction, SamePart, m >= 3. Throws PreconditionError otherwise.
ReducedModel build_reduced_same(const WalkParams& params);
ReducedModel build_reduced_same(std::size_t m, std::size_t n);

/// 2x2 reduction for K_{2,n} SamePart ({init, target} is already invariant).
ReducedModel build_reduced_same_degenerate(const WalkParams& params);
ReducedModel build_reduced_same_degenerate(std::size_t n);

/// 4x4 reduction, OppositePart, m, n >= 2.
ReducedModel build_reduced_opposite(const WalkParams& params);
ReducedModel build_reduced_opposite(std::size_t m, std::size_t n);

/// Picks the 2x2 / 3x3 / 4x4 builder for the params. Throws PreconditionError
/// for OppositePart with m == 1 or n == 1.
ReducedModel build_reduced(const WalkParams& params);

/// Eigen-decomposition of the 4x4 OppositePart matrix in the phi basis.
/// Eigenvalues are {1, 1, e^{i omega}, e^{-i omega}} for chi_1..chi_4.
struct SpectralModel {
  std::size_t m = 0;
  std::size_t n = 0;
  double omega = 0.0;
  std::complex<double> a;
  double b = 0.0;
  std::complex<double> c;
  std::array<Eigen::Vector4cd, 4> chi;
  std::array<std::complex<double>, 4> eigenvalues;

  /// max_k ||M chi_k - lambda_k chi_k||
  double eigen_residual(const Eigen::Matrix4d& matrix) const;

  /// Coordinates (phi basis) of the state after 2t+1 walk steps, from the
  /// eigen-expansion of U|init>.
  Eigen::Vector4cd evolved_coords(double t) const;
};

SpectralModel spectral_opposite(std::size_t m, std::size_t n);

/// The 4x4 OppositePart matrix only (no basis embedding).
Eigen::Matrix4d reduced_matrix_opposite(std::size_t m, std::size_t n);
/// The 3x3 SamePart matrix only.
Eigen::Matrix3d reduced_matrix_same(std::size_t m);

/// arccos((mn - 2m - 2n + 2) / (mn)); m, n >= 1.
double omega_opposite(std::size_t m, std::size_t n);

/// Fidelity after `steps` (odd) walk steps, OppositePart, m, n >= 2.
/// Throws PreconditionError for even steps or degenerate sizes.
double fidelity_closed_form(std::size_t m, std::size_t n, std::size_t steps);
/// Same expression at a real number t of effective two-step iterations.
double fidelity_closed_form_continuous(std::size_t m, std::size_t n, double t);

/// ((sqrt((m-1)(n-1)) + sqrt(mn)) / (m+n-1))^2; m, n >= 1.
double fmax_opposite(std::size_t m, std::size_t n);

/// 2 pi / arccos((m-4)/m), the real-valued star-graph transfer time.
double transfer_time_same_real(std::size_t m);
/// 2 arccos(-sqrt((m-1)(n-1)/(mn))) / omega + 1.
double transfer_time_opposite_real(std::size_t m, std::size_t n);

/// Integer of the given parity (0 even, 1 odd) closest to x; exact ties go
/// to the smaller candidate. Odd results are >= 1, even results >= 2.
std::size_t nearest_with_parity(double x, unsigned parity);

struct TransferReport {
  WalkParams params;
  std::optional<double> omega;       // OppositePart only
  double T_real = 0.0;               // unrounded formula value
  std::size_t T_opt = 0;
  double F_max_analytic = 0.0;
  double F_at_T = 0.0;
  std::optional<double> F_before;    // fidelity at T_opt - 2, when >= parity minimum
  std::optional<double> F_after;     // fidelity at T_opt + 2
  std::vector<std::pair<std::size_t, double>> curve;
};

/// SamePart needs m >= 2, OppositePart needs m, n >= 2.
TransferReport transfer_time(const WalkParams& params);

}  // namespace pstwalk
