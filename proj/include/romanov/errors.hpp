#pragma once

#include <stdexcept>
#include <string>

namespace romanov {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the operation's mathematical domain (x <= 0, limit < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A table, schedule, bit budget or enumeration cap is too small for the request.
class CapacityError : public Error {
public:
    using Error::Error;
};

// The operation does not apply to this input (wrong schedule kind, block index too small).
class InapplicableError : public Error {
public:
    using Error::Error;
};

// Structurally invalid covering system.
class MalformedError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Unparseable user input: numbers, power expressions, config files.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace romanov
