#include "cyclordf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cyclordf {

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CYCLORDF_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_num_procs();
}

}  // namespace cyclordf
