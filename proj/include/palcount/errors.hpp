#pragma once

#include <stdexcept>
#include <string>

namespace palcount {

/// A float-assisted count failed the integrality or reality check.
class integrality_error : public std::runtime_error {
public:
    explicit integrality_error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation would leave the exact range: q^n beyond the float-exact
/// guard, a 64-bit count overflow, or an enumeration above the search cap.
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Process-wide integrality tolerance. Defaults to 1e-6, or the value of
/// PALCOUNT_TOLERANCE if the environment sets one.
double tolerance();
void set_tolerance(double tol);

}  // namespace palcount
