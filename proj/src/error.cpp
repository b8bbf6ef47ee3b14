#include "gpd/error.hpp"

#include <utility>

namespace gpd {

Error::Error(ErrorCategory category, std::string kind, const std::string& message,
             nlohmann::json witness)
    : std::runtime_error(message),
      category_(category),
      kind_(std::move(kind)),
      witness_(std::move(witness)) {}

nlohmann::json Error::to_json() const {
  return {{"error", {{"kind", kind_}, {"message", what()}, {"witness", witness_}}}};
}

void fail(std::string kind, const std::string& message, nlohmann::json witness) {
  throw Error(ErrorCategory::validation, std::move(kind), message, std::move(witness));
}

void usage_error(std::string kind, const std::string& message, nlohmann::json witness) {
  throw Error(ErrorCategory::usage, std::move(kind), message, std::move(witness));
}

void cap_exceeded(const std::string& what, std::size_t limit, std::size_t actual) {
  throw Error(ErrorCategory::cap, "CapExceeded",
              what + " exceeds the configured cap (" + std::to_string(actual) + " > " +
                  std::to_string(limit) + ")",
              {{"what", what}, {"limit", limit}, {"actual", actual}});
}

}  // namespace gpd
