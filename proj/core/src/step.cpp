#include "pstwalk/step.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pstwalk {

void apply_grover(std::span<const Amplitude> in, std::span<Amplitude> out) {
  if (in.empty()) throw std::invalid_argument("apply_grover: empty coin vector");
  if (in.size() != out.size())
    throw std::invalid_argument("apply_grover: input/output size mismatch");
  Amplitude sum{0.0, 0.0};
  for (const auto& c : in) sum += c;
  const Amplitude mean2 = sum * (2.0 / static_cast<double>(in.size()));
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = mean2 - in[k];
}

std::vector<Amplitude> apply_grover(std::span<const Amplitude> coeffs) {
  std::vector<Amplitude> out(coeffs.size());
  apply_grover(coeffs, out);
  return out;
}

WalkState initial_state(const WalkParams& params) {
  params.validate();
  WalkState state(params);
  const double amp = 1.0 / std::sqrt(static_cast<double>(params.n));
  for (auto& a : state.part1_row(params.sender0())) a = amp;
  return state;
}

WalkState target_state(const WalkParams& params) {
  params.validate();
  WalkState state(params);
  if (params.layout == Layout::SamePart) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(params.n));
    for (auto& a : state.part1_row(params.receiver0())) a = amp;
  } else {
    const double amp = 1.0 / std::sqrt(static_cast<double>(params.m));
    for (auto& a : state.part2_row(params.receiver0())) a = amp;
  }
  return state;
}

double fidelity(const WalkState& state, const WalkState& target) {
  return std::norm(target.inner(state));
}

StepOperator::StepOperator(const WalkParams& params) : params_(params) {
  params_.validate();
}

void StepOperator::apply(const WalkState& in, WalkState& out) const {
  if (in.params() != params_ || out.params() != params_)
    throw std::logic_error("StepOperator::apply: state/operator params differ");
  if (&in == &out)
    throw std::logic_error("StepOperator::apply: in and out must be distinct");

  const std::size_t m = params_.m;
  const std::size_t n = params_.n;
  const double grover_n = 2.0 / static_cast<double>(n);
  const double grover_m = 2.0 / static_cast<double>(m);

  // U1: coin on part-1 row i, then |i,alpha> -> |alpha,i>.
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = in.part1_row(i);
    if (params_.is_marked_part1(i)) {
      for (std::size_t alpha = 0; alpha < n; ++alpha) out.part2(alpha, i) = -row[alpha];
      continue;
    }
    Amplitude sum{0.0, 0.0};
    for (const auto& c : row) sum += c;
    const Amplitude mean2 = sum * grover_n;
    for (std::size_t alpha = 0; alpha < n; ++alpha) out.part2(alpha, i) = mean2 - row[alpha];
  }

  // U2: coin on part-2 row alpha, then |alpha,i> -> |i,alpha>.
  for (std::size_t alpha = 0; alpha < n; ++alpha) {
    const auto row = in.part2_row(alpha);
    if (params_.is_marked_part2(alpha)) {
      for (std::size_t i = 0; i < m; ++i) out.part1(i, alpha) = -row[i];
      continue;
    }
    Amplitude sum{0.0, 0.0};
    for (const auto& c : row) sum += c;
    const Amplitude mean2 = sum * grover_m;
    for (std::size_t i = 0; i < m; ++i) out.part1(i, alpha) = mean2 - row[i];
  }

  out.set_step_count(in.step_count() + 1);
}

WalkState StepOperator::operator()(const WalkState& in) const {
  WalkState out(params_);
  apply(in, out);
  return out;
}

WalkState step(const WalkState& state, const StepOperator& op) { return op(state); }

WalkState apply_shift(const WalkState& state) {
  WalkState out(state.params());
  for (std::size_t i = 0; i < state.m(); ++i)
    for (std::size_t alpha = 0; alpha < state.n(); ++alpha) {
      out.part2(alpha, i) = state.part1(i, alpha);
      out.part1(i, alpha) = state.part2(alpha, i);
    }
  out.set_step_count(state.step_count());
  return out;
}

Walker::Walker(const WalkParams& params)
    : Walker(params, initial_state(params)) {}

Walker::Walker(const WalkParams& params, WalkState start)
    : op_(params), current_(std::move(start)), scratch_(params) {
  if (current_.params() != params)
    throw std::logic_error("Walker: start state has different params");
}

void Walker::advance() {
  op_.apply(current_, scratch_);
  std::swap(current_, scratch_);
}

void Walker::advance(std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) advance();
}

}  // namespace pstwalk
