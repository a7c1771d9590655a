#include "propkoszul/parallel.hpp"

#include <cstdlib>
#include <string>

namespace propkoszul {

int resolve_jobs(int requested) {
  if (const char* env = std::getenv("PROPKOSZUL_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  if (requested >= 1) return requested;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace propkoszul
