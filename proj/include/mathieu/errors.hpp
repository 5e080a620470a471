#pragma once

#include <stdexcept>
#include <string>

namespace mathieu {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the domain of an operation (q = 0 in the continued fraction, ...).
class DomainError : public Error { using Error::Error; };
// Right-hand side not in the range of a singular operator.
class RangeError : public Error { using Error::Error; };
// Iteration cap reached without meeting the stopping rule.
class ConvergenceError : public Error { using Error::Error; };
class SingularJacobian : public Error { using Error::Error; };
class LabelAmbiguity : public Error { using Error::Error; };
class TrimFailure : public Error { using Error::Error; };
class NotTabulated : public Error { using Error::Error; };
class NormalizationImpossible : public Error { using Error::Error; };
class NotASplitPair : public Error { using Error::Error; };
class StepUnderflow : public Error { using Error::Error; };
class SingularCollocation : public Error { using Error::Error; };
class ConsistencyFailure : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };
class OverflowError : public Error { using Error::Error; };

}  // namespace mathieu
