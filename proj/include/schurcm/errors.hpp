#pragma once

#include <stdexcept>

namespace schurcm {

// Base class for every failure the library reports. Catch this to get all of
// them; catch a subclass to handle one condition specifically.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error { using Error::Error; };
struct NotSymmetricError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct NotPdError : Error { using Error::Error; };
struct BadIndexSetError : Error { using Error::Error; };
struct NotBonaFideError : Error { using Error::Error; };
struct UnknownPartyError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct LabelClashError : Error { using Error::Error; };
struct BadAlphaError : Error { using Error::Error; };
struct NumericalFailureError : Error { using Error::Error; };
struct UnknownCheckError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace schurcm
