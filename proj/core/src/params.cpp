#include "pstwalk/params.hpp"

#include <sstream>

namespace pstwalk {

std::string_view to_string(Layout layout) {
  return layout == Layout::SamePart ? "same" : "opposite";
}

Layout parse_layout(std::string_view text) {
  if (text == "same" || text == "SamePart") return Layout::SamePart;
  if (text == "opposite" || text == "OppositePart") return Layout::OppositePart;
  throw ConfigError("unknown layout '" + std::string(text) +
                    "' (expected 'same' or 'opposite')");
}

WalkParams WalkParams::make(std::size_t m, std::size_t n, Layout layout,
                            std::optional<std::size_t> sender,
                            std::optional<std::size_t> receiver) {
  WalkParams p;
  p.m = m;
  p.n = n;
  p.layout = layout;
  p.sender = sender.value_or(1);
  p.receiver = receiver.value_or(layout == Layout::SamePart ? 2 : 1);
  p.validate();
  return p;
}

void WalkParams::validate() const {
  auto fail = [](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    throw ConfigError(os.str());
  };
  if (m < 1) fail("m must be >= 1 (got ", m, ")");
  if (n < 1) fail("n must be >= 1 (got ", n, ")");
  if (sender < 1 || sender > m)
    fail("sender must be in 1..", m, " (got ", sender, ")");
  if (layout == Layout::SamePart) {
    if (m < 2) fail("same-part layout needs m >= 2 (got ", m, ")");
    if (receiver < 1 || receiver > m)
      fail("receiver must be in 1..", m, " for same-part layout (got ",
           receiver, ")");
    if (receiver == sender)
      fail("receiver must differ from sender (both ", sender, ")");
  } else {
    if (receiver < 1 || receiver > n)
      fail("receiver must be in 1..", n, " for opposite-part layout (got ",
           receiver, ")");
  }
}

}  // namespace pstwalk
