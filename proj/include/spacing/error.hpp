#pragma once

#include <stdexcept>
#include <string>

namespace spacing {

// Every failure raised by the library derives from Error. The CLI maps
// ArgumentError/UnsupportedError to usage failures and the rest to
// data/numeric failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// Series derivation found leading data that does not satisfy the ODE.
class DerivationError : public Error {
public:
    using Error::Error;
};

// The integrated trajectory drifted off the original sigma-form equation.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class StiffnessError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace spacing
