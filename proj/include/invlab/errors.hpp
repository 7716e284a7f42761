#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace invlab {

// Caller broke a precondition (bad widths, asymmetric input, invalid family...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured search or enumeration limit was hit. Never a wrong answer.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two routes that must agree did not. Always a finding, never swallowed.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A constructed family failed its decycling check; carries the residual cycle.
class FamilyVerificationError : public InvariantViolation {
public:
    FamilyVerificationError(const std::string& what, std::vector<int> cycle)
        : InvariantViolation(what), cycle_(std::move(cycle)) {}

    const std::vector<int>& cycle() const noexcept { return cycle_; }

private:
    std::vector<int> cycle_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace invlab
