#include "evacrec/fingerprint.hpp"

#include <bit>
#include <cstdio>

namespace evacrec {

Fingerprint& Fingerprint::add(std::string_view bytes) noexcept {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  // Length terminator so that ("ab","c") and ("a","bc") differ.
  return add(static_cast<std::int64_t>(bytes.size()));
}

Fingerprint& Fingerprint::add(std::int64_t value) noexcept {
  auto v = static_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    state_ ^= (v >> (8 * i)) & 0xffU;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fingerprint& Fingerprint::add(double value) noexcept {
  return add(std::bit_cast<std::int64_t>(value));
}

std::string Fingerprint::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(state_));
  return buf;
}

}  // namespace evacrec
