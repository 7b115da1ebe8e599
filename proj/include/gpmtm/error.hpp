#pragma once

#include <stdexcept>
#include <string>

namespace gpmtm {

// Raised for invalid input, violated preconditions and corrupted state.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GPMTM_CHECK(cond, msg)            \
  do {                                    \
    if (!(cond)) throw ::gpmtm::Error(msg); \
  } while (0)

}  // namespace gpmtm
