#pragma once

#include <stdexcept>
#include <string>

namespace genlab {

// Caller broke a precondition (wrong dimensions, disabled gate, repeated pair...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Singular system: the collected relations do not pin down the unknowns.
struct NotInformative : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnfaithfulQuery : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

}  // namespace genlab
