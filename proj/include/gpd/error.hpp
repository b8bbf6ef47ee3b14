#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace gpd {

/// Maps onto the CLI exit codes: validation -> 1, usage -> 2, cap -> 3.
enum class ErrorCategory { validation, usage, cap };

/// Every failure raised by the library.
///
/// `kind` is a stable token ("NotAssociative", "CapExceeded", ...) and
/// `witness` names the offending elements, so callers can serialize the
/// error without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message,
        nlohmann::json witness = nlohmann::json::object());

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

  /// {"error":{"kind":..., "message":..., "witness":...}}
  nlohmann::json to_json() const;

 private:
  ErrorCategory category_;
  std::string kind_;
  nlohmann::json witness_;
};

[[noreturn]] void fail(std::string kind, const std::string& message,
                       nlohmann::json witness = nlohmann::json::object());
[[noreturn]] void usage_error(std::string kind, const std::string& message,
                              nlohmann::json witness = nlohmann::json::object());
[[noreturn]] void cap_exceeded(const std::string& what, std::size_t limit, std::size_t actual);

}  // namespace gpd
