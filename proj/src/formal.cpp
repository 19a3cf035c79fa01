#include "stokeskit/formal.hpp"

#include <cstdio>

namespace stokeskit {

std::string Direction::to_string() const {
  if (exact) return stokeskit::to_string(*exact);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace stokeskit
