#include "pstwalk/walk_state.hpp"

#include <algorithm>
#include <ostream>

#include "pstwalk/io.hpp"

namespace pstwalk {

WalkState::WalkState(const WalkParams& params)
    : params_(params), amps_(params.dim(), Amplitude{0.0, 0.0}) {}

double WalkState::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

double WalkState::part_weight(int part) const {
  const auto begin = amps_.begin() + (part == 1 ? 0 : part2_offset());
  const auto end = part == 1 ? amps_.begin() + part2_offset() : amps_.end();
  double acc = 0.0;
  for (auto it = begin; it != end; ++it) acc += std::norm(*it);
  return acc;
}

Amplitude WalkState::inner(const WalkState& other) const {
  Amplitude acc{0.0, 0.0};
  const std::size_t len = std::min(amps_.size(), other.amps_.size());
  for (std::size_t k = 0; k < len; ++k) acc += std::conj(amps_[k]) * other.amps_[k];
  return acc;
}

void WalkState::fill_zero() {
  std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
}

void WalkState::write_csv(std::ostream& os) const {
  os << "part,position,coin,re,im\n";
  for (std::size_t i = 0; i < params_.m; ++i) {
    for (std::size_t alpha = 0; alpha < params_.n; ++alpha) {
      const auto& a = part1(i, alpha);
      os << "1," << i + 1 << ',' << alpha + 1 << ',' << format_double(a.real())
         << ',' << format_double(a.imag()) << '\n';
    }
  }
  for (std::size_t alpha = 0; alpha < params_.n; ++alpha) {
    for (std::size_t i = 0; i < params_.m; ++i) {
      const auto& a = part2(alpha, i);
      os << "2," << alpha + 1 << ',' << i + 1 << ',' << format_double(a.real())
         << ',' << format_double(a.imag()) << '\n';
    }
  }
}

}  // namespace pstwalk
