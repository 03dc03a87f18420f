#pragma once

#include <stdexcept>
#include <string>

namespace mslab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInterval : public Error {
public:
    using Error::Error;
};

class InvalidWindow : public Error {
public:
    using Error::Error;
};

class SingularLattice : public Error {
public:
    using Error::Error;
};

class InvalidSmoothing : public Error {
public:
    using Error::Error;
};

/// Neither factor of a comb pairing carries a decay certificate.
class NoTailBound : public Error {
public:
    using Error::Error;
};

class NotUniformlyDiscrete : public Error {
public:
    using Error::Error;
};

class DuplicateNode : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Raised for malformed or out-of-range run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mslab
