#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dualmink/errors.hpp"

namespace dualmink {

/// Unit vector on S^{n-1}, n >= 2. Construction normalizes and rejects
/// near-zero input; afterwards |u| = 1 holds to within 1e-12.
class Direction {
  public:
    Direction(std::initializer_list<double> coords);
    explicit Direction(std::span<const double> coords);

    int dim() const { return static_cast<int>(c_.size()); }
    double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    std::span<const double> coords() const { return c_; }

    double dot(const Direction& o) const;
    double dot(std::span<const double> v) const;

    /// Angle to another direction in [0, pi].
    double angle_to(const Direction& o) const;

  private:
    std::vector<double> c_;
};

/// Finite discrete measure on S^{n-1}: atoms (direction, weight > 0).
/// Atoms closer than 1e-8 rad are rejected as duplicates.
class DiscreteMeasure {
  public:
    struct Atom {
        Direction v;
        double w;
    };

    DiscreteMeasure(int dim, std::vector<Atom> atoms);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(atoms_.size()); }
    const Atom& atom(int i) const { return atoms_[static_cast<size_t>(i)]; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const { return total_; }

    std::vector<double> weights() const;

  private:
    int dim_;
    std::vector<Atom> atoms_;
    double total_;
};

/// True iff the atoms are NOT contained in any closed hemisphere, i.e.
/// there is no v != 0 with v·u_i >= 0 for every atom u_i. This is the
/// solvability condition for the q < 0 inverse problem.
///
/// n=2 uses the exact circular-gap criterion (largest angular gap >= pi).
/// n=3 asks whether the origin is strictly interior to the convex hull of
/// the atom directions, which is equivalent. n>=4 maximizes min_i v·u_i
/// over each face of the unit sup-norm ball (2n small LPs solved by vertex
/// enumeration); concentrated iff some face optimum is >= -1e-10.
bool hemisphere_check(const DiscreteMeasure& mu);

/// Same check on a raw direction set (used for body normals).
bool directions_span_positively(int dim, const std::vector<Direction>& dirs);

} // namespace dualmink
