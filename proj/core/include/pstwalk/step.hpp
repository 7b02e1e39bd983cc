// step.hpp
// One step U = U1 + U2 of the coined walk, applied in O(mn) without ever
// forming a matrix. U_k = S_k * C_k: the coin acts on each vertex's coin row
// (minus identity on marked vertices, Grover diffusion elsewhere), then the
// shift moves |i,alpha> to |alpha,i> and back.

#pragma once

#include <span>
#include <vector>

#include "pstwalk/params.hpp"
#include "pstwalk/walk_state.hpp"

namespace pstwalk {

/// out_a = (2/d) * sum_b in_b - in_a. `in` and `out` may alias.
/// Throws std::invalid_argument on empty input or size mismatch.
void apply_grover(std::span<const Amplitude> in, std::span<Amplitude> out);
std::vector<Amplitude> apply_grover(std::span<const Amplitude> coeffs);

/// (1/sqrt n) sum_alpha |s,alpha>, step 0.
WalkState initial_state(const WalkParams& params);

/// SamePart: (1/sqrt n) sum_alpha |r,alpha>.
/// OppositePart: (1/sqrt m) sum_i |rho,i> in part 2.
WalkState target_state(const WalkParams& params);

/// |<state|target>|^2.
double fidelity(const WalkState& state, const WalkState& target);

/// Immutable step operator. Stores only the walk parameters.
class StepOperator {
 public:
  explicit StepOperator(const WalkParams& params);

  const WalkParams& params() const { return params_; }

  /// out = U * in; out.step_count() = in.step_count() + 1. `out` must be a
  /// distinct object sized for the same params. Throws std::logic_error on
  /// mismatched params.
  void apply(const WalkState& in, WalkState& out) const;

  WalkState operator()(const WalkState& in) const;

 private:
  WalkParams params_;
};

/// Convenience: U * state.
WalkState step(const WalkState& state, const StepOperator& op);

/// Shift only (coins replaced by identity): |i,alpha> <-> |alpha,i>.
/// Applying it twice is the identity.
WalkState apply_shift(const WalkState& state);

/// A walk in progress: current state plus a scratch buffer so that repeated
/// advancing does not allocate.
class Walker {
 public:
  explicit Walker(const WalkParams& params);
  Walker(const WalkParams& params, WalkState start);

  const WalkState& state() const { return current_; }
  void advance();
  void advance(std::size_t steps);

 private:
  StepOperator op_;
  WalkState current_;
  WalkState scratch_;
};

}  // namespace pstwalk
