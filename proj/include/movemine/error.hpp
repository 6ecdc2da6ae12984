#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace movemine {

// All library failures throw this type. `tag` is a stable, machine-checkable
// category ("empty-input", "kind-mismatch", "gap", ...); the message carries
// the human-readable detail.
class error : public std::runtime_error {
 public:
  error(std::string tag, const std::string& detail)
      : std::runtime_error(tag + ": " + detail), tag_(std::move(tag)) {}

  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

[[noreturn]] inline void fail(std::string tag, const std::string& detail) {
  throw error(std::move(tag), detail);
}

inline void warn(std::vector<std::string>* sink, std::string message) {
  if (sink) sink->push_back(std::move(message));
}

}  // namespace movemine
