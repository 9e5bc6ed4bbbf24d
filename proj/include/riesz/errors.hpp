#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The polyadic kernel has nonzero mean over the sphere, so the singular
/// transform has no Fourier multiplier.
class InadmissibleKernelError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sampler or construction not available in the requested dimension.
class UnsupportedDimensionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A combinatorial enumeration would exceed its configured cap.
class SizeCapError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace riesz
