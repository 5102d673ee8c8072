#pragma once

#include <stdexcept>
#include <string>

namespace ptv {

/// Rotation angle (or another argument) outside the supported domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A translation vector of the wrong kind was passed to a map or rate function.
class KindMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A 3x3 system expected to be regular turned out singular. Inside the
/// angle domain this indicates a bug, not bad input.
class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ground-truth generator failed its refinement check.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ptv
