#include "pstwalk/dense_oracle.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "pstwalk/io.hpp"

namespace pstwalk {

namespace {

void guard(const WalkParams& params) {
  params.validate();
  if (params.m * params.n > kDenseMaxCells)
    throw PreconditionError("dense oracle limited to m*n <= " +
                            std::to_string(kDenseMaxCells) + " (got " +
                            std::to_string(params.m * params.n) + ")");
}

// Coin matrix element <a|C|b> on a vertex of degree d: -delta_ab if marked,
// 2/d - delta_ab (Grover) otherwise.
double coin_element(bool marked, std::size_t d, std::size_t a, std::size_t b) {
  const double delta = a == b ? 1.0 : 0.0;
  return marked ? -delta : 2.0 / static_cast<double>(d) - delta;
}

Eigen::VectorXcd to_vector(const WalkState& state) {
  const auto amps = state.amplitudes();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v(static_cast<Eigen::Index>(k)) = amps[k];
  return v;
}

}  // namespace

DenseUnitary build_dense(const WalkParams& params) {
  guard(params);
  const std::size_t m = params.m;
  const std::size_t n = params.n;
  const auto dim = static_cast<Eigen::Index>(2 * m * n);

  // |i,alpha> in part 1 and |alpha,i> in part 2, 0-based.
  auto ket1 = [n](std::size_t i, std::size_t alpha) {
    return static_cast<Eigen::Index>(i * n + alpha);
  };
  auto ket2 = [m, n](std::size_t alpha, std::size_t i) {
    return static_cast<Eigen::Index>(m * n + alpha * m + i);
  };

  const bool same = params.layout == Layout::SamePart;
  const std::size_t s = params.sender - 1;
  const std::size_t r = params.receiver - 1;

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);

  // U1 = sum_i sum_{alpha,beta} <alpha|C^(i)|beta> |alpha,i><i,beta|
  for (std::size_t i = 0; i < m; ++i) {
    const bool marked = i == s || (same && i == r);
    for (std::size_t alpha = 0; alpha < n; ++alpha)
      for (std::size_t beta = 0; beta < n; ++beta)
        u(ket2(alpha, i), ket1(i, beta)) += coin_element(marked, n, alpha, beta);
  }
  // U2 = sum_alpha sum_{i,j} <i|C^(alpha)|j> |i,alpha><alpha,j|
  for (std::size_t alpha = 0; alpha < n; ++alpha) {
    const bool marked = !same && alpha == r;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        u(ket1(i, alpha), ket2(alpha, j)) += coin_element(marked, m, i, j);
  }
  return DenseUnitary(params, std::move(u));
}

double DenseUnitary::unitarity_residual() const {
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

bool DenseUnitary::is_block_off_diagonal() const {
  const auto half = static_cast<Eigen::Index>(params_.m * params_.n);
  return matrix_.topLeftCorner(half, half).isZero(0.0) &&
         matrix_.bottomRightCorner(half, half).isZero(0.0);
}

WalkState DenseUnitary::apply(const WalkState& state) const {
  const Eigen::VectorXcd out = matrix_ * to_vector(state);
  WalkState result(params_);
  auto amps = result.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] = out(static_cast<Eigen::Index>(k));
  result.set_step_count(state.step_count() + 1);
  return result;
}

void DenseUnitary::write_csv(std::ostream& os) const {
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < matrix_.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix_.cols(); ++c) {
      const auto& z = matrix_(r, c);
      if (z == std::complex<double>{0.0, 0.0}) continue;
      os << r << ',' << c << ',' << format_double(z.real()) << ','
         << format_double(z.imag()) << '\n';
    }
}

double matrix_power_fidelity(const WalkParams& params, std::size_t steps) {
  const DenseUnitary u = build_dense(params);

  // Initial and target vectors written out directly in the linear layout.
  const std::size_t m = params.m;
  const std::size_t n = params.n;
  const auto dim = static_cast<Eigen::Index>(2 * m * n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(dim);
  for (std::size_t alpha = 0; alpha < n; ++alpha)
    psi(static_cast<Eigen::Index>((params.sender - 1) * n + alpha)) = 1.0 / std::sqrt(double(n));
  if (params.layout == Layout::SamePart) {
    for (std::size_t alpha = 0; alpha < n; ++alpha)
      target(static_cast<Eigen::Index>((params.receiver - 1) * n + alpha)) =
          1.0 / std::sqrt(double(n));
  } else {
    for (std::size_t i = 0; i < m; ++i)
      target(static_cast<Eigen::Index>(m * n + (params.receiver - 1) * m + i)) =
          1.0 / std::sqrt(double(m));
  }

  for (std::size_t t = 0; t < steps; ++t) psi = u.matrix() * psi;
  return std::norm(target.dot(psi));
}

}  // namespace pstwalk
