#include "homckn/error.hpp"

namespace homckn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::unsupported_group: return "unsupported-group";
    case ErrorCode::incompatible_norm: return "incompatible-norm";
    case ErrorCode::missing_derivative: return "missing-derivative";
    case ErrorCode::singular_point: return "singular-point";
    case ErrorCode::singular_support: return "singular-support";
    case ErrorCode::unsupported_domain: return "unsupported-domain";
    case ErrorCode::degenerate_constant: return "degenerate-constant";
    case ErrorCode::outside_pure_region: return "outside-pure-region";
    case ErrorCode::config_error: return "config-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<int> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

}  // namespace homckn
