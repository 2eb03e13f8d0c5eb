#include "dgm/sweep.hpp"

namespace dgm {

std::string_view to_string(Execution e) noexcept {
  return e == Execution::Parallel ? "parallel" : "serial";
}

bool parallel_available() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int sweep_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dgm
