#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symprime {

/// Raised when a table or buffer cannot be allocated.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, std::uint64_t requested_bytes)
        : std::runtime_error(what + " (requested " + std::to_string(requested_bytes) + " bytes)"),
          requested_bytes_(requested_bytes) {}

    std::uint64_t requested_bytes() const noexcept { return requested_bytes_; }

private:
    std::uint64_t requested_bytes_;
};

/// Raised when a query needs a sieve bound larger than the table was built to.
/// `required()` is the smallest bound that would satisfy the query.
class bound_error : public std::out_of_range {
public:
    bound_error(const std::string& what, std::uint64_t required)
        : std::out_of_range(what + " (required bound " + std::to_string(required) + ")"),
          required_(required) {}

    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

} // namespace symprime
