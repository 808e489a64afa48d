#pragma once

#include <stdexcept>
#include <string>

namespace torictk {

enum class ErrorKind {
    Parse,       // malformed input file
    Validation,  // structurally bad mathematical object
    Domain,      // arguments outside an operation's contract
    Budget,      // enumeration cap exceeded
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace torictk
