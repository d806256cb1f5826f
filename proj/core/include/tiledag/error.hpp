#pragma once

#include <stdexcept>
#include <string>

namespace tiledag {

// Raised when an operation's precondition does not hold (bad dimensions,
// invalid elimination list, malformed column, ...).
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a graph that must be acyclic is not.
class CycleError : public std::runtime_error {
public:
    CycleError(const std::string& what, long from, long to)
        : std::runtime_error(what), from_(from), to_(to) {}
    long from() const { return from_; }
    long to() const { return to_; }

private:
    long from_;
    long to_;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ContractError(msg);
}

}  // namespace tiledag
