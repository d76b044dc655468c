#include "permres/budget.hpp"

#include <cstdlib>

#include "permres/errors.hpp"

namespace permres {

Budget::Budget(std::chrono::milliseconds limit)
    : limited_(true), deadline_(start_ + limit) {}

std::optional<std::chrono::milliseconds> Budget::from_env() {
  const char* v = std::getenv("PERMRES_BUDGET_MS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  long long ms = std::strtoll(v, &end, 10);
  if (*end != '\0' || ms <= 0) throw InputError("PERMRES_BUDGET_MS must be a positive integer");
  return std::chrono::milliseconds(ms);
}

void Budget::check(const char* what) {
  if (!limited_) return;
  if ((ticks_.fetch_add(1, std::memory_order_relaxed) & 255u) != 0) return;
  if (std::chrono::steady_clock::now() > deadline_)
    throw ResourceError(std::string(what) + ": time budget exhausted");
}

bool Budget::expired() const {
  return limited_ && std::chrono::steady_clock::now() > deadline_;
}

std::chrono::milliseconds Budget::elapsed() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start_);
}

Budget& unlimited_budget() {
  static Budget b;
  return b;
}

}  // namespace permres
