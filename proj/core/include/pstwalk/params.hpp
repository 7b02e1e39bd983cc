// params.hpp
// Graph sizes and marked-vertex placement for a coined walk on K_{m,n}.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pstwalk {

/// Thrown when walk parameters violate their invariants (bad sizes or
/// out-of-range vertex indices).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an analytic routine is called outside the parameter range where
/// its closed form is defined (e.g. the 3x3 reduction at m < 3).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Where the receiver sits relative to the sender (which is always in part 1).
enum class Layout { SamePart, OppositePart };

std::string_view to_string(Layout layout);
/// Accepts "same"/"opposite" (and the enum spellings). Throws ConfigError.
Layout parse_layout(std::string_view text);

/// Walk configuration. Vertex indices are 1-based, as in the usual notation
/// |i,alpha>; storage elsewhere is 0-based.
///
/// `receiver` indexes part 1 for SamePart and part 2 for OppositePart.
struct WalkParams {
  std::size_t m = 0;
  std::size_t n = 0;
  Layout layout = Layout::OppositePart;
  std::size_t sender = 1;
  std::size_t receiver = 1;

  /// Defaults: sender 1, receiver 2 (SamePart) or 1 of part 2 (OppositePart).
  /// Validates before returning.
  static WalkParams make(std::size_t m, std::size_t n, Layout layout,
                         std::optional<std::size_t> sender = std::nullopt,
                         std::optional<std::size_t> receiver = std::nullopt);

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;

  std::size_t dim() const { return 2 * m * n; }
  std::size_t sender0() const { return sender - 1; }
  std::size_t receiver0() const { return receiver - 1; }

  bool is_marked_part1(std::size_t i0) const {
    return i0 == sender0() || (layout == Layout::SamePart && i0 == receiver0());
  }
  bool is_marked_part2(std::size_t alpha0) const {
    return layout == Layout::OppositePart && alpha0 == receiver0();
  }

  friend bool operator==(const WalkParams&, const WalkParams&) = default;
};

}  // namespace pstwalk
