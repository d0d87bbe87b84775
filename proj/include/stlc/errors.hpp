#ifndef STLC_ERRORS_HPP
#define STLC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stlc {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BasisTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParamsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace stlc

#endif
