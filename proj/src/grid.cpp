#include "hierakit/grid.hpp"

#include <cstdlib>
#include <string>

namespace hierakit {

std::int64_t memory_budget_bytes() {
  static const std::int64_t cached = [] {
    const char* env = std::getenv("HIERAKIT_BUDGET_BYTES");
    if (env != nullptr && *env != '\0') {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end == nullptr || *end != '\0' || v <= 0)
        throw InvalidInputError("HIERAKIT_BUDGET_BYTES must be a positive integer");
      return static_cast<std::int64_t>(v);
    }
    return std::int64_t{2} * 1024 * 1024 * 1024;
  }();
  return cached;
}

void check_budget(std::int64_t count, const char* what) {
  const std::int64_t bytes_per_entry = 16;  // complex<double>
  std::int64_t budget = memory_budget_bytes();
  if (count > budget / bytes_per_entry)
    throw NumericalError(std::string(what) + ": " + std::to_string(count) +
                         " complex entries exceed memory budget of " +
                         std::to_string(budget) + " bytes");
}

}  // namespace hierakit
