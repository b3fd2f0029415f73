#pragma once

#include <stdexcept>
#include <string>

namespace radsurf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact-arithmetic kernel failures.
struct DivisionError : Error { using Error::Error; };
struct EvalError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };

// Radical solver failures.
struct DegreeError : Error { using Error::Error; };
struct AmbiguousLeadingCoefficient : Error { using Error::Error; };

// Certified evaluation could not decide at the current precision.
struct PrecisionError : Error { using Error::Error; };

// Surface-level failures.
struct NotOnSurface : Error { using Error::Error; };
struct DegenerateParametrization : Error { using Error::Error; };
struct LineFamilyDegenerate : Error { using Error::Error; };

// Curve / pencil failures.
struct NonOrdinarySingularity : Error { using Error::Error; };
struct AdjointSystemEmpty : Error { using Error::Error; };
struct TangentLine : Error { using Error::Error; };
struct SimplePointExtractionFailed : Error { using Error::Error; };
struct TheoryViolation : Error { using Error::Error; };
struct HyperellipticOrDataError : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };
struct DegenerateScroll : Error { using Error::Error; };
struct DegeneratePencil : Error { using Error::Error; };
struct PencilRational : Error { using Error::Error; };
struct OutOfScopeGenus : Error { using Error::Error; };
struct HintRequired : Error { using Error::Error; };

// Geometric constructions.
struct DegenerateNormal : Error { using Error::Error; };
struct DegenerateFocus : Error { using Error::Error; };
struct OutOfScopeConstruction : Error { using Error::Error; };

// Text input.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : Error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l), column(c) {}
};

struct InternalError : Error { using Error::Error; };

}  // namespace radsurf
