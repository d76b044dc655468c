#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace permres {

// Wall-clock budget shared by a search. check() throws ResourceError once the
// deadline passes; the clock is sampled every few hundred calls.
class Budget {
 public:
  Budget() = default;
  explicit Budget(std::chrono::milliseconds limit);
  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  static std::optional<std::chrono::milliseconds> from_env();

  void check(const char* what = "search");
  bool expired() const;
  bool limited() const { return limited_; }
  std::chrono::milliseconds elapsed() const;

 private:
  bool limited_ = false;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::chrono::steady_clock::time_point deadline_{};
  std::atomic<std::uint32_t> ticks_{0};
};

Budget& unlimited_budget();

}  // namespace permres
