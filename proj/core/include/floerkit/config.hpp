#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace floerkit {

struct RunConfig {
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;  // max tuple evaluations per enumeration
  int depth = 4;
  std::vector<std::string> test_groups{"Z2", "Z3", "Z4", "S3", "Q8"};
  std::string output_dir;

  /// Worker count from FLOERKIT_THREADS, else the hardware concurrency.
  static RunConfig from_env();
  void validate() const;
};

}  // namespace floerkit
