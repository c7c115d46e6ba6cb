#include "floerkit/config.hpp"

#include <cstdlib>
#include <thread>

#include "floerkit/error.hpp"

namespace floerkit {

RunConfig RunConfig::from_env() {
  RunConfig cfg;
  unsigned hw = std::thread::hardware_concurrency();
  cfg.workers = hw == 0 ? 1 : hw;
  if (const char* env = std::getenv("FLOERKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) cfg.workers = static_cast<unsigned>(v);
  }
  return cfg;
}

void RunConfig::validate() const {
  if (budget == 0) raise(ErrorKind::ResourceLimit, "budget must be positive");
  if (depth < 0) raise(ErrorKind::ResourceLimit, "depth must be non-negative");
}

}  // namespace floerkit
