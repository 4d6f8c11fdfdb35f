#include "curlspec/parallel.hpp"

#include <cstdlib>
#include <string>

namespace curlspec {

unsigned resolve_thread_count(unsigned requested) {
  unsigned n = requested == 0 ? 1U : requested;
  if (const char* env = std::getenv("CURLSPEC_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
  return n;
}

}  // namespace curlspec
