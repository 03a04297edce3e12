#pragma once

#include <stdexcept>
#include <string>

namespace lvhopf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model parameters admit no positive interior equilibrium.
class InfeasibleParams : public Error {
public:
    using Error::Error;
};

/// Kernel transform evaluated at (or too close to) a pole.
class PoleReached : public Error {
public:
    using Error::Error;
};

/// A point-mass kernel has no quadrature discretization.
class DiracNotDiscretizable : public Error {
public:
    using Error::Error;
};

/// The frequency cubic has no positive real root.
class NoPositiveRoot : public Error {
public:
    using Error::Error;
};

/// A sign-change scan failed to bracket the sought root.
class BracketNotFound : public Error {
public:
    using Error::Error;
};

/// A characteristic root sits on a counting rectangle's boundary.
class BoundaryRoot : public Error {
public:
    using Error::Error;
};

/// Iterative root polish did not converge.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// No stability crossing found up to the scan ceiling.
class NoCrossingFound : public Error {
public:
    NoCrossingFound(const std::string& what, double ceiling)
        : Error(what), scan_ceiling(ceiling) {}
    double scan_ceiling = 0.0;
};

/// Crossing root is not simple; the Hopf theorem hypotheses fail.
class DegenerateRoot : public Error {
public:
    using Error::Error;
};

/// The 2x2 moment system is singular.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// Chain integration requires an Erlang kernel.
class NotErlang : public Error {
public:
    using Error::Error;
};

/// Step size too large to resolve a discrete lag.
class StepTooCoarse : public Error {
public:
    using Error::Error;
};

/// Trajectory too short for the requested metrics.
class TooShort : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace lvhopf
