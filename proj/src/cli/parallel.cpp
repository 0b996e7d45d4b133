#include "csl/cli/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace csl::cli {

unsigned thread_count() {
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CSLRATE_THREADS");
  if (env == nullptr) return hardware;
  try {
    const long v = std::stol(env);
    if (v > 0) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  return hardware;
}

}  // namespace csl::cli
