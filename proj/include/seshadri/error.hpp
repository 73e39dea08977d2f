#pragma once

#include <stdexcept>
#include <string>

namespace seshadri {

/// Raised for invalid input: malformed rationals, violated preconditions,
/// model documents that fail an invariant. The message names the failure.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace seshadri
