#pragma once

#include <stdexcept>
#include <string>

namespace daride {

// Thrown by the desk-scale oracles when an instance exceeds their limits.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace daride
