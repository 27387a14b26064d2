#ifndef NHP_ERRORS_HPP
#define NHP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nhp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NHP_DEFINE_ERROR(Name)                        \
    struct Name : Error {                             \
        using Error::Error;                           \
    }

NHP_DEFINE_ERROR(OutOfBounds);
NHP_DEFINE_ERROR(ParseError);
NHP_DEFINE_ERROR(InvalidProblem);
NHP_DEFINE_ERROR(IoError);
NHP_DEFINE_ERROR(InvalidBias);
NHP_DEFINE_ERROR(InvalidThreshold);
NHP_DEFINE_ERROR(DimensionMismatch);
NHP_DEFINE_ERROR(EmptyInput);
NHP_DEFINE_ERROR(EmptyTruth);
NHP_DEFINE_ERROR(NonBinaryTruth);
NHP_DEFINE_ERROR(DegenerateDenominator);
NHP_DEFINE_ERROR(InconsistentTruth);
NHP_DEFINE_ERROR(GenerationFailed);
NHP_DEFINE_ERROR(Unsolvable);
NHP_DEFINE_ERROR(InsufficientSolutions);
NHP_DEFINE_ERROR(ConfigError);
NHP_DEFINE_ERROR(MissingPrediction);

#undef NHP_DEFINE_ERROR

} // namespace nhp

#endif
