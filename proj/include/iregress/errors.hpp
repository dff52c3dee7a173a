#pragma once

#include <stdexcept>
#include <string>

namespace iregress {

// Contract violations surface as exceptions; a legitimately nonexistent
// least squares solution is returned as a value (see FitOutcome), never
// thrown.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class BoundsInverted : public Error {
public:
    BoundsInverted(double lower, double upper)
        : Error("interval bounds inverted: lower " + std::to_string(lower) +
                " > upper " + std::to_string(upper)),
          lower(lower),
          upper(upper) {}
    double lower;
    double upper;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class TooFewRows : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

class PatternBudgetExceeded : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class IterationLimit : public Error {
public:
    using Error::Error;
};

class ZeroTotalVariation : public Error {
public:
    using Error::Error;
};

class RejectionBudgetExceeded : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace iregress
