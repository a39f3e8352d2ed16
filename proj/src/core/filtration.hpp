#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cube.hpp"

namespace cubeph {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Birth-time map on the cubes of a box; cubes outside the box never appear.
class Filtration {
public:
    explicit Filtration(const Box& box);
    explicit Filtration(const Window& window) : Filtration(Box::from_window(window)) {}

    const Box& box() const { return grid_.box(); }
    const CellGrid& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }

    /// The centered window this filtration lives on; throws for translated boxes.
    Window window() const;
    bool is_centered() const;

    double birth(const ElementaryCube& cube) const;
    double birth_at(std::size_t index) const { return births_[index]; }
    void set_birth(const ElementaryCube& cube, double t);
    void set_birth_at(std::size_t index, double t) { births_[index] = t; }
    std::span<const double> births() const { return births_; }

    /// Copy of this filtration on a sub-box; births outside the sub-box drop.
    Filtration restricted(const Box& sub) const;

    std::size_t finite_count() const;
    /// Number of finite-birth cubes per dimension 0..d.
    std::vector<std::size_t> finite_counts_by_dimension() const;
    /// Largest finite birth, or -inf for an empty filtration.
    double max_finite_birth() const;

    friend bool operator==(const Filtration& a, const Filtration& b);

private:
    CellGrid grid_;
    std::vector<double> births_;
};

/// First failure of the monotone face condition in canonical cube order.
struct Violation {
    ElementaryCube face;
    ElementaryCube cube;
    double face_birth = 0;
    double cube_birth = 0;
    std::string message() const;
};

/// Checks births(face) <= births(cube) for every face of every finite-birth
/// cube, and that births are nonnegative and not NaN.
std::optional<Violation> validate(const Filtration& filtration);

/// Restriction to the centered window Lambda^m; m must not exceed the window.
Filtration restrict(const Filtration& filtration, int m);

/// Face-closed cube list of X(t), canonically ordered.
std::vector<ElementaryCube> sublevel(const Filtration& filtration, double t);

}  // namespace cubeph
