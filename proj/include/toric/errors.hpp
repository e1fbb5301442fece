#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// Invalid geometric input (bad fan, non-convex support, ...). CLI exit code 2.
class GeometryError : public std::runtime_error {
public:
    GeometryError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Input is well formed but a precondition of the operation fails. CLI exit code 3.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// A computed identity did not hold. CLI exit code 1.
class IdentityFailure : public std::runtime_error {
public:
    IdentityFailure(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace toric
