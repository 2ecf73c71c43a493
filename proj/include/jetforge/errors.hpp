#pragma once

#include <stdexcept>
#include <string>

namespace jetforge {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define JETFORGE_ERROR(Name)                         \
    class Name : public Error {                      \
    public:                                          \
        explicit Name(const std::string& what)       \
            : Error(std::string(#Name ": ") + what)  \
        {                                            \
        }                                            \
    }

JETFORGE_ERROR(FieldMismatch);
JETFORGE_ERROR(DivisionByZero);
JETFORGE_ERROR(NonUnitLeadingCoefficient);
JETFORGE_ERROR(UnboundVariable);
JETFORGE_ERROR(NotABaseElement);
JETFORGE_ERROR(MissingGrading);
JETFORGE_ERROR(InhomogeneousRelation);
JETFORGE_ERROR(UndeclaredVariable);
JETFORGE_ERROR(BadLevels);
JETFORGE_ERROR(IndexOutOfRange);
JETFORGE_ERROR(UnsupportedTwist);
JETFORGE_ERROR(UnknownSuite);
JETFORGE_ERROR(InvalidConfig);
JETFORGE_ERROR(DimensionMismatch);
JETFORGE_ERROR(RingMismatch);

#undef JETFORGE_ERROR

} // namespace jetforge
