// walk_state.hpp
// Amplitude vector over H = H1 (+) H2 for the walk on K_{m,n}.
//
// Linear layout (0-based i, alpha):
//   part 1, |i,alpha>  ->  i*n + alpha
//   part 2, |alpha,i>  ->  m*n + alpha*m + i
// This layout is shared with the dense oracle and with CSV snapshots.

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "pstwalk/params.hpp"

namespace pstwalk {

using Amplitude = std::complex<double>;

class WalkState {
 public:
  /// All-zero state. Call sites normally go through initial_state() etc.
  explicit WalkState(const WalkParams& params);

  const WalkParams& params() const { return params_; }
  std::size_t m() const { return params_.m; }
  std::size_t n() const { return params_.n; }
  std::size_t dim() const { return amps_.size(); }

  std::size_t step_count() const { return step_; }
  void set_step_count(std::size_t step) { step_ = step; }

  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  /// Row of n coin amplitudes at part-1 vertex i.
  std::span<Amplitude> part1_row(std::size_t i) {
    return {amps_.data() + i * params_.n, params_.n};
  }
  std::span<const Amplitude> part1_row(std::size_t i) const {
    return {amps_.data() + i * params_.n, params_.n};
  }
  /// Row of m coin amplitudes at part-2 vertex alpha.
  std::span<Amplitude> part2_row(std::size_t alpha) {
    return {amps_.data() + part2_offset() + alpha * params_.m, params_.m};
  }
  std::span<const Amplitude> part2_row(std::size_t alpha) const {
    return {amps_.data() + part2_offset() + alpha * params_.m, params_.m};
  }

  Amplitude& part1(std::size_t i, std::size_t alpha) {
    return amps_[part1_index(i, alpha)];
  }
  const Amplitude& part1(std::size_t i, std::size_t alpha) const {
    return amps_[part1_index(i, alpha)];
  }
  Amplitude& part2(std::size_t alpha, std::size_t i) {
    return amps_[part2_index(alpha, i)];
  }
  const Amplitude& part2(std::size_t alpha, std::size_t i) const {
    return amps_[part2_index(alpha, i)];
  }

  std::size_t part1_index(std::size_t i, std::size_t alpha) const {
    return i * params_.n + alpha;
  }
  std::size_t part2_index(std::size_t alpha, std::size_t i) const {
    return part2_offset() + alpha * params_.m + i;
  }
  std::size_t part2_offset() const { return params_.m * params_.n; }

  double norm_squared() const;
  /// Squared norm restricted to one part (1 or 2).
  double part_weight(int part) const;

  /// <this|other>, antilinear in this.
  Amplitude inner(const WalkState& other) const;

  void fill_zero();

  /// CSV snapshot: header `part,position,coin,re,im`, 1-based indices,
  /// 17 significant digits. Zero amplitudes are included.
  void write_csv(std::ostream& os) const;

 private:
  WalkParams params_;
  std::vector<Amplitude> amps_;
  std::size_t step_ = 0;
};

}  // namespace pstwalk
