#pragma once

#include <stdexcept>
#include <string>

namespace dgnwb {

// Bad user input or an unmet mathematical precondition.  CLI exit code 2.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.  CLI exit code 2.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The working field does not split some module; names the degree it needs.
struct FieldTooSmallError : std::runtime_error {
  int needed_degree;
  FieldTooSmallError(const std::string& what, int needed)
      : std::runtime_error(what), needed_degree(needed) {}
};

// A statement the theory guarantees failed on concrete data.  CLI exit code 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace dgnwb
