#pragma once

#include <stdexcept>
#include <string>

namespace oporder {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define OPORDER_DEFINE_ERROR(Name)             \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

OPORDER_DEFINE_ERROR(ShapeMismatch);
OPORDER_DEFINE_ERROR(NonFinite);
OPORDER_DEFINE_ERROR(InvalidTolerance);
OPORDER_DEFINE_ERROR(NotPsd);
OPORDER_DEFINE_ERROR(NotHermitian);
OPORDER_DEFINE_ERROR(BasisNotOrthonormal);
OPORDER_DEFINE_ERROR(NotWeaklyComplementable);
OPORDER_DEFINE_ERROR(NotComplementable);
OPORDER_DEFINE_ERROR(BSingular);
OPORDER_DEFINE_ERROR(BTNotHermitian);
OPORDER_DEFINE_ERROR(WitnessInvalid);
OPORDER_DEFINE_ERROR(FactorizationInvalid);
OPORDER_DEFINE_ERROR(ChainViolation);
OPORDER_DEFINE_ERROR(InternalInconsistency);
OPORDER_DEFINE_ERROR(NotPP);
OPORDER_DEFINE_ERROR(NotPartialIsometry);
OPORDER_DEFINE_ERROR(AntisymmetryViolation);
OPORDER_DEFINE_ERROR(GenerationFailed);
OPORDER_DEFINE_ERROR(ParseError);

#undef OPORDER_DEFINE_ERROR

}  // namespace oporder
