// dense_oracle.hpp
// Brute-force reference for small graphs: the full 2mn x 2mn matrix of U,
// assembled entry by entry from the sums defining U1 and U2. It does not call
// into the structured step code, so the two can check each other.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>

#include "pstwalk/params.hpp"
#include "pstwalk/walk_state.hpp"

namespace pstwalk {

/// Largest m*n the oracle will allocate for (dim 8192).
inline constexpr std::size_t kDenseMaxCells = 4096;

class DenseUnitary {
 public:
  const WalkParams& params() const { return params_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// max |(U^dagger U - I)_{jk}|
  double unitarity_residual() const;

  /// True when U maps part 1 only into part 2 and vice versa.
  bool is_block_off_diagonal() const;

  /// Dense matrix-vector product U * state.
  WalkState apply(const WalkState& state) const;

  /// Nonzero entries as `row,col,re,im` (0-based linear layout indices).
  void write_csv(std::ostream& os) const;

 private:
  friend DenseUnitary build_dense(const WalkParams& params);
  DenseUnitary(const WalkParams& params, Eigen::MatrixXcd matrix)
      : params_(params), matrix_(std::move(matrix)) {}

  WalkParams params_;
  Eigen::MatrixXcd matrix_;
};

/// Throws PreconditionError when m*n > kDenseMaxCells.
DenseUnitary build_dense(const WalkParams& params);

/// |<target|U^steps|init>|^2 by repeated dense mat-vec products.
double matrix_power_fidelity(const WalkParams& params, std::size_t steps);

}  // namespace pstwalk
