#include "lpmw/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lpmw {

int default_jobs() {
  if (const char* env = std::getenv("LPMW_JOBS")) {
    try {
      const int jobs = std::stoi(env);
      if (jobs >= 1) return jobs;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace lpmw
