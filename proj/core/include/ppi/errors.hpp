#pragma once

#include <stdexcept>
#include <string>

namespace ppi {

// Base class for everything this library throws on purpose.  Catching
// ppi::Error separates domain failures from genuine bugs (std::logic_error
// style misuse still surfaces as BadParameters below, since callers of a
// numerical library usually want one net).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input fails a structural precondition (wrong shape, out-of-range argument,
// malformed file content).
struct BadParameters : Error {
    using Error::Error;
};

// hermitian_eig: input is not Hermitian within tolerance.
struct NotHermitian : Error {
    using Error::Error;
};

// An iteration hit its sweep/step cap before reaching its target.
struct NoConvergence : Error {
    using Error::Error;
};

// orthonormal_completion: the given columns are not orthonormal.
struct NotIsometric : Error {
    using Error::Error;
};

// Operation is guarded to small dimensions (char_poly and friends).
struct DimensionTooLarge : Error {
    using Error::Error;
};

// The two partial-isometry criteria disagree: the input sits on the
// tolerance boundary and no trustworthy yes/no answer exists.
struct AmbiguousAtTolerance : Error {
    using Error::Error;
};

// Operator norm exceeds 1 + tol where a contraction is required.
struct NotAContraction : Error {
    using Error::Error;
};

// random_ppi: profile is empty, has a zero entry, or is not nonincreasing.
struct BadProfile : Error {
    using Error::Error;
};

// staircase_form: some power A^j in 1..k is not a partial isometry.
// `power` is the first j that failed.
struct NotPowerPartialIsometry : Error {
    explicit NotPowerPartialIsometry(const std::string& what, std::size_t power_)
        : Error(what), power(power_) {}
    std::size_t power = 0;
};

// A computed certificate (block identity, zero pattern, reconstruction)
// missed its stated bound.
struct ToleranceBreach : Error {
    using Error::Error;
};

// halmos_wallen: some power stops being a partial isometry, so the index is
// finite.  `power` is the first failing exponent.
struct NotInfiniteIndex : Error {
    explicit NotInfiniteIndex(const std::string& what, std::size_t power_)
        : Error(what), power(power_) {}
    std::size_t power = 0;
};

// Input is not an S_n-matrix (contraction, spectrum in the open disc,
// defect rank one).
struct NotSn : Error {
    using Error::Error;
};

// check_prop31 requires 0 to be an eigenvalue; the input is invertible.
struct Invertible : Error {
    using Error::Error;
};

// A constructed object failed its own post-construction validation.
struct ConstructionFailedValidation : Error {
    using Error::Error;
};

// repro: the requested example id is not bundled.
struct UnknownExample : Error {
    using Error::Error;
};

}  // namespace ppi
