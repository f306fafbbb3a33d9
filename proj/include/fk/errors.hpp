#pragma once

#include <stdexcept>
#include <string>

namespace fk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct StepError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct ConditioningError : Error { using Error::Error; };
// Branch or quadrature failure: imaginary residue too large, or the
// refinement budget ran out before the requested tolerance.
struct QuadratureError : Error { using Error::Error; };
struct ExceptionalKappaError : Error { using Error::Error; };
struct DegenerateInputError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };

}  // namespace fk
