#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace homckn {

enum class ErrorCode {
  invalid_parameter,
  unsupported_group,
  incompatible_norm,
  missing_derivative,
  singular_point,
  singular_support,
  unsupported_domain,
  degenerate_constant,
  outside_pure_region,
  config_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `index()` carries the offending product index for
/// degenerate-constant errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<int> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<int> index_;
};

}  // namespace homckn
