#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cube.hpp"
#include "rng.hpp"

namespace cubeph {

/// A law on [0, inf]: a finite part plus an optional atom at infinity.
struct Distribution {
    enum class Family { point_mass, uniform, exponential, empirical };

    Family family = Family::point_mass;
    /// point_mass: a = location. uniform: [a, b]. exponential: a = rate.
    double a = 0;
    double b = 0;
    /// empirical: nondecreasing values with cumulative probabilities ending at 1.
    std::vector<double> values;
    std::vector<double> cdf;
    /// Probability of the value +inf.
    double inf_mass = 0;

    static Distribution point(double c);
    static Distribution uniform(double lo, double hi);
    static Distribution exponential(double rate);
    static Distribution empirical(std::vector<double> values, std::vector<double> cdf);

    /// Throws std::invalid_argument when the parameters do not define a law on [0, inf].
    void check() const;
    /// Inverse distribution function at u in [0, 1).
    double quantile(double u) const;
};

std::string to_string(Distribution::Family family);
Distribution::Family parse_distribution_family(const std::string& text);

/// Law of the lattice perturbation: a point mass at `at` (zero if empty),
/// uniform on [-scale, scale]^d, or isotropic Gaussian with deviation `scale`.
struct Perturbation {
    enum class Family { point_mass, uniform_box, gaussian };

    Family family = Family::point_mass;
    std::vector<double> at;
    double scale = 0;

    void check(int dim) const;
    /// Radius of a ball around 0 containing the support; inf for Gaussian.
    double support_radius(int dim) const;
    std::array<double, kMaxDim> draw(const CounterStream& stream, const std::array<std::uint32_t, 3>& id,
                                     int dim) const;
};

std::string to_string(Perturbation::Family family);
Perturbation::Family parse_perturbation_family(const std::string& text);

}  // namespace cubeph
