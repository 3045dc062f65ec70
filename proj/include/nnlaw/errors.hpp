#pragma once

#include <stdexcept>
#include <string>

namespace nnlaw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed point data: ragged rows, non-finite coordinates, zero dimension.
class InvalidPointSet : public Error {
public:
    using Error::Error;
};

/// A summand of the statistic is not finite, e.g. 0^alpha with alpha < 0
/// caused by duplicate points. Callers may resample.
class DegenerateStatistic : public Error {
public:
    using Error::Error;
};

/// Gamma function argument j + alpha/d is not positive.
class InvalidGammaArgument : public Error {
public:
    using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Entropy index rho must be positive and different from 1.
class InvalidRho : public Error {
public:
    using Error::Error;
};

/// No convergence (or divergence) guarantee covers the requested experiment.
class ConditionRefused : public Error {
public:
    using Error::Error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nnlaw
