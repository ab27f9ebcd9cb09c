#pragma once

#include <stdexcept>
#include <string>

namespace modgeo {

/// Base class for all numerical-contract violations raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};
struct SpectrumOutOfDomain : Error {
    using Error::Error;
};
struct NotDensity : Error {
    using Error::Error;
};
struct NotFaithful : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct StripViolation : Error {
    using Error::Error;
};
struct ZeroScale : Error {
    using Error::Error;
};
struct NotNormalized : Error {
    using Error::Error;
};
struct VanishingAmplitude : Error {
    using Error::Error;
};
struct TangentConditionFailed : Error {
    using Error::Error;
};
struct QuadratureDivergence : Error {
    using Error::Error;
};

}  // namespace modgeo
