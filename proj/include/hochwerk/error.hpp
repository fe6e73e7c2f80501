#pragma once

#include <stdexcept>
#include <string>

namespace hochwerk {

// Root of everything this library throws deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- linear algebra ---------------------------------------------------------

struct DimensionMismatch : Error {
    using Error::Error;
};

// Raised when a claimed subspace inclusion fails, e.g. im d not contained in
// ker d one degree up. Always indicates a broken complex or a caller bug.
struct ContainmentViolation : Error {
    using Error::Error;
};

// -- structure validation ---------------------------------------------------

struct ValidationError : Error {
    using Error::Error;
};

struct NotAssociative : ValidationError {
    int i, j, k;
    NotAssociative(int i_, int j_, int k_, const std::string& msg)
        : ValidationError(msg), i(i_), j(j_), k(k_) {}
};

struct UnitLawFails : ValidationError {
    int i;
    UnitLawFails(int i_, const std::string& msg) : ValidationError(msg), i(i_) {}
};

struct LeftActionNotHom : ValidationError {
    int i, j;
    LeftActionNotHom(int i_, int j_, const std::string& msg)
        : ValidationError(msg), i(i_), j(j_) {}
};

struct RightActionNotAntiHom : ValidationError {
    int i, j;
    RightActionNotAntiHom(int i_, int j_, const std::string& msg)
        : ValidationError(msg), i(i_), j(j_) {}
};

struct ActionsDontCommute : ValidationError {
    int i, j;
    ActionsDontCommute(int i_, int j_, const std::string& msg)
        : ValidationError(msg), i(i_), j(j_) {}
};

struct NotUnital : ValidationError {
    using ValidationError::ValidationError;
};

struct NotIdempotent : ValidationError {
    using ValidationError::ValidationError;
};

struct CornersDontSpan : ValidationError {
    using ValidationError::ValidationError;
};

struct AlgebraMismatch : ValidationError {
    using ValidationError::ValidationError;
};

// -- theorem machinery ------------------------------------------------------

struct HypothesisViolated : Error {
    using Error::Error;
};

// Bar complexes are exact by construction; seeing this means the differential
// assembly is wrong, not the input.
struct ExactnessFailure : Error {
    using Error::Error;
};

struct NotInverse : Error {
    using Error::Error;
};

// -- tooling ----------------------------------------------------------------

struct ParseError : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

}  // namespace hochwerk
