#pragma once

#include <stdexcept>
#include <string>

namespace fockrank {

/// Instance data failed validation.  `kind` is stable and machine-checkable;
/// `what()` names the offending field or value.
class ValidationError : public std::runtime_error {
public:
    enum class Kind {
        DimensionMismatch,
        PauliViolation,
        NegativeOccupation,
        NonFiniteScalar,
        RankCapExceeded,
        EmptyInstance,
        StatisticsMismatch,
        BadField,
    };

    ValidationError(Kind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// A polynomial product would exceed the destination's degree cap.  Signals
/// mis-sized caps in the caller; never silent truncation.
class CapOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation would exceed a memory or size guard.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fockrank
