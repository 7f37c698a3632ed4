#pragma once

#include <stdexcept>
#include <string>

namespace mcis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct NegativeWeight : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct DegenerateMarginal : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct MissingAssignment : Error { using Error::Error; };
struct TargetAbove : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };

}  // namespace mcis
