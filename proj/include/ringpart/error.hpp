#pragma once

#include <stdexcept>
#include <string>

namespace ringpart {

enum class Errc {
  instance,   // malformed instance: bad lengths, out-of-range indices
  parameter,  // parameter outside its admissible range
  size,       // oracle state space exceeds its guard
  parse,      // malformed input file or spec string
  io,
  invariant,  // an internal invariant failed; always a bug
  contract,   // caller broke an interface contract
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace ringpart
