#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace evacrec {

// 64-bit FNV-1a. Stable across platforms, used for staleness checks only
// (matrix files, plan records); not a security primitive.
class Fingerprint {
 public:
  Fingerprint& add(std::string_view bytes) noexcept;
  Fingerprint& add(std::int64_t value) noexcept;
  Fingerprint& add(double value) noexcept;

  std::uint64_t value() const noexcept { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace evacrec
