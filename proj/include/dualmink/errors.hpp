#pragma once

#include <stdexcept>
#include <string>

namespace dualmink {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Body data violates an invariant (non-positive support, duplicate or
/// non-unit normal, vertex outside a halfspace, dimension out of range).
struct InvalidBody : Error {
    using Error::Error;
};

/// The requested Wulff shape is unbounded: the normals fit in a closed
/// hemisphere, so some direction is unconstrained.
struct UnboundedWulff : Error {
    using Error::Error;
};

/// Measure data violates an invariant (non-positive weight, duplicate atom
/// within 1e-8 rad, zero total mass, dimension mismatch).
struct InvalidMeasure : Error {
    using Error::Error;
};

/// An integrand evaluated to NaN or infinity at a quadrature node.
struct NonFiniteIntegrand : Error {
    using Error::Error;
};

/// Input data that should describe a convex object fails to (degenerate
/// hull, collapsing vertex configuration).
struct NonConvexData : Error {
    using Error::Error;
};

/// Two inputs that must agree in shape (same dimension, same atom/facet
/// count and order) do not.
struct ShapeMismatch : Error {
    using Error::Error;
};

} // namespace dualmink
