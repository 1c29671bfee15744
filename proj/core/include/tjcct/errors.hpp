#pragma once

#include <stdexcept>
#include <string>

namespace tjcct {

/// Base for all recoverable model errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class KinematicViolation : public Error {
public:
    using Error::Error;
};

class NoViableTrade : public Error {
public:
    using Error::Error;
};

class DegenerateDiscounts : public Error {
public:
    using Error::Error;
};

class InfeasibleAllocation : public Error {
public:
    using Error::Error;
};

class InfeasibleEpoch : public Error {
public:
    using Error::Error;
};

class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IllegalTransition : public Error {
public:
    using Error::Error;
};

}  // namespace tjcct
