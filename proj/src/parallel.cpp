#include "ergodlab/parallel.hpp"

#include <cstdlib>
#include <string>

#include "ergodlab/frac.hpp"

namespace ergodlab {

unsigned resolve_threads(int requested) {
  if (requested > 0) {
    return static_cast<unsigned>(requested);
  }
  if (const char* env = std::getenv("ERGODLAB_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) {
      throw DomainError(std::string("ERGODLAB_THREADS must be an integer in [1, 1024], got '") + env + "'");
    }
    return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace ergodlab
