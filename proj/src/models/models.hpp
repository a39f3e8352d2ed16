#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cube.hpp"
#include "distribution.hpp"
#include "filtration.hpp"

namespace cubeph {

enum class ModelKind { upper, lower, perturbed_lattice, ball_cover };

std::string to_string(ModelKind kind);
/// Throws std::invalid_argument for an unknown tag.
ModelKind parse_model_kind(const std::string& text);

struct ModelSpec {
    ModelKind kind = ModelKind::lower;
    int dim = 2;
    /// Mark laws F_0..F_d for the upper and lower models.
    std::vector<Distribution> marks;
    /// Perturbation law for the two lattice-point models.
    Perturbation perturbation;
    /// Ball cover: sample points per nondegenerate axis of a cube, corners included.
    int grid_points = 8;

    /// Throws std::invalid_argument on inconsistent parameters.
    void check() const;
    /// Integer R such that birth families over regions more than R apart
    /// (max norm) are independent.
    int dependence_range() const;
    /// True when births are numerical approximations (ball cover).
    bool approximate() const { return kind == ModelKind::ball_cover; }
};

struct Seed {
    std::uint64_t master = 0;
    std::uint64_t trial = 0;
};

/// Unrestricted births of every cube in `box`, windowed to the box. Births are
/// a function of (spec, seed, cube) only, so sampling a sub-box gives exactly
/// the restriction of a larger sample.
Filtration sample(const ModelSpec& spec, const Box& box, const Seed& seed);
Filtration sample(const ModelSpec& spec, int n, const Seed& seed);

Filtration sample_upper(int dim, int n, std::span<const Distribution> marks, const Seed& seed);
Filtration sample_lower(int dim, int n, std::span<const Distribution> marks, const Seed& seed);
Filtration sample_perturbed_lattice(int dim, int n, const Perturbation& mu, const Seed& seed);
Filtration sample_ball_cover(int dim, int n, const Perturbation& mu, int grid_points, const Seed& seed);

/// The translated block 2k z + [-(k-r), k-r]^d sampled from the same field as
/// the centered windows. Throws std::invalid_argument unless k > r and 2r > R.
Filtration block_copy(const ModelSpec& spec, int k, int r, std::span<const int> z, const Seed& seed);

/// The random variables a sampler reads for one box. Upper and lower marks are
/// keyed by doubled cube coordinates, the lattice models by lattice points;
/// either way the keys are exactly the integer points of `keys`.
struct VariableDomain {
    bool doubled = false;
    Box keys;
};
VariableDomain variable_domain(const ModelSpec& spec, const Box& box);

/// Lattice points and their perturbed positions, for the deterministic cores below.
using PointField = std::function<std::array<double, kMaxDim>(std::span<const int> lattice_point)>;

/// x_z = z + e_z as drawn by the lattice-point models for this seed.
std::array<double, kMaxDim> lattice_position(const ModelSpec& spec, std::span<const int> z, const Seed& seed);

/// Perturbed-lattice births on `box` from explicit positions x_z.
Filtration perturbed_lattice_births(const Box& box, const PointField& position);

/// Grid estimate of inf{t : cube within the union of closed t-balls around points}.
double covering_radius(const ElementaryCube& cube, std::span<const std::array<double, kMaxDim>> points,
                       int grid_points);

}  // namespace cubeph
