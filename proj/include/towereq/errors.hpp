#pragma once

#include <stdexcept>
#include <string>

namespace towereq {

enum class errc {
  base_not_supported,
  arity,
  promotion,
  depth,
  domain,
  base_mismatch,
  magnitude,
  height,
  atom_not_power_of_base,
  lowering,
  unsupported_shape,
  corrupt_checkpoint,
  parse,
  io,
};

constexpr const char* errc_name(errc c) {
  switch (c) {
    case errc::base_not_supported:     return "BaseNotSupported";
    case errc::arity:                  return "ArityError";
    case errc::promotion:              return "PromotionError";
    case errc::depth:                  return "DepthError";
    case errc::domain:                 return "DomainError";
    case errc::base_mismatch:          return "BaseMismatch";
    case errc::magnitude:              return "MagnitudeError";
    case errc::height:                 return "HeightError";
    case errc::atom_not_power_of_base: return "AtomNotPowerOfBase";
    case errc::lowering:               return "LoweringError";
    case errc::unsupported_shape:      return "UnsupportedShape";
    case errc::corrupt_checkpoint:     return "CorruptCheckpoint";
    case errc::parse:                  return "ParseError";
    case errc::io:                     return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

// Integer folding and interval exponentiation refuse to materialize B^z once
// |z| crosses this bound; larger towers stay symbolic.
inline constexpr long kMagnitudeCap = 1L << 20;

}  // namespace towereq
