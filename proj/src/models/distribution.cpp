#include "distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "filtration.hpp"

namespace cubeph {

Distribution Distribution::point(double c) {
    Distribution d;
    d.family = Family::point_mass;
    d.a = c;
    return d;
}

Distribution Distribution::uniform(double lo, double hi) {
    Distribution d;
    d.family = Family::uniform;
    d.a = lo;
    d.b = hi;
    return d;
}

Distribution Distribution::exponential(double rate) {
    Distribution d;
    d.family = Family::exponential;
    d.a = rate;
    return d;
}

Distribution Distribution::empirical(std::vector<double> values, std::vector<double> cdf) {
    Distribution d;
    d.family = Family::empirical;
    d.values = std::move(values);
    d.cdf = std::move(cdf);
    return d;
}

void Distribution::check() const {
    if (!(inf_mass >= 0 && inf_mass <= 1)) throw std::invalid_argument("inf_mass must lie in [0, 1]");
    switch (family) {
        case Family::point_mass:
            if (!(a >= 0)) throw std::invalid_argument("point mass location must be >= 0");
            break;
        case Family::uniform:
            if (!(a >= 0 && b >= a && std::isfinite(b)))
                throw std::invalid_argument("uniform law needs 0 <= a <= b < inf");
            break;
        case Family::exponential:
            if (!(a > 0 && std::isfinite(a))) throw std::invalid_argument("exponential rate must be positive");
            break;
        case Family::empirical: {
            if (values.empty() || values.size() != cdf.size())
                throw std::invalid_argument("empirical law needs matching nonempty values and cdf");
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (!(values[i] >= 0 && std::isfinite(values[i])))
                    throw std::invalid_argument("empirical values must be finite and >= 0");
                if (!(cdf[i] > 0 && cdf[i] <= 1)) throw std::invalid_argument("empirical cdf must lie in (0, 1]");
                if (i > 0 && (values[i] <= values[i - 1] || cdf[i] <= cdf[i - 1]))
                    throw std::invalid_argument("empirical values and cdf must be strictly increasing");
            }
            if (cdf.back() != 1.0) throw std::invalid_argument("empirical cdf must end at 1");
            break;
        }
    }
}

double Distribution::quantile(double u) const {
    if (inf_mass > 0) {
        if (u >= 1.0 - inf_mass) return kNever;
        u /= 1.0 - inf_mass;
    }
    switch (family) {
        case Family::point_mass:
            return a;
        case Family::uniform:
            return a + (b - a) * u;
        case Family::exponential:
            return -std::log1p(-u) / a;
        case Family::empirical: {
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), values.size() - 1);
            return values[i];
        }
    }
    return a;
}

std::string to_string(Distribution::Family family) {
    switch (family) {
        case Distribution::Family::point_mass: return "point_mass";
        case Distribution::Family::uniform: return "uniform";
        case Distribution::Family::exponential: return "exponential";
        case Distribution::Family::empirical: return "empirical";
    }
    return "?";
}

Distribution::Family parse_distribution_family(const std::string& text) {
    if (text == "point_mass") return Distribution::Family::point_mass;
    if (text == "uniform") return Distribution::Family::uniform;
    if (text == "exponential") return Distribution::Family::exponential;
    if (text == "empirical") return Distribution::Family::empirical;
    throw std::invalid_argument("unknown distribution family '" + text + "'");
}

void Perturbation::check(int dim) const {
    if (!at.empty() && static_cast<int>(at.size()) != dim)
        throw std::invalid_argument("perturbation point must have d coordinates");
    for (double x : at)
        if (!std::isfinite(x)) throw std::invalid_argument("perturbation point must be finite");
    if (!(scale >= 0 && std::isfinite(scale))) throw std::invalid_argument("perturbation scale must be finite and >= 0");
}

double Perturbation::support_radius(int dim) const {
    switch (family) {
        case Family::point_mass: {
            double s = 0;
            for (double x : at) s += x * x;
            return std::sqrt(s);
        }
        case Family::uniform_box:
            return scale * std::sqrt(static_cast<double>(dim));
        case Family::gaussian:
            return scale == 0 ? 0.0 : kNever;
    }
    return kNever;
}

std::array<double, kMaxDim> Perturbation::draw(const CounterStream& stream, const std::array<std::uint32_t, 3>& id,
                                               int dim) const {
    std::array<double, kMaxDim> e{};
    switch (family) {
        case Family::point_mass:
            for (int i = 0; i < dim && i < static_cast<int>(at.size()); ++i) e[i] = at[i];
            break;
        case Family::uniform_box:
            for (int i = 0; i < dim; i += 2) {
                const auto u = stream.uniform2(id, static_cast<std::uint32_t>(i / 2));
                e[i] = scale * (2 * u[0] - 1);
                if (i + 1 < dim) e[i + 1] = scale * (2 * u[1] - 1);
            }
            break;
        case Family::gaussian:
            // Box-Muller; 1 - u keeps the logarithm finite
            for (int i = 0; i < dim; i += 2) {
                const auto u = stream.uniform2(id, static_cast<std::uint32_t>(i / 2));
                const double radius = scale * std::sqrt(-2 * std::log(1 - u[0]));
                const double angle = 2 * std::numbers::pi * u[1];
                e[i] = radius * std::cos(angle);
                if (i + 1 < dim) e[i + 1] = radius * std::sin(angle);
            }
            break;
    }
    return e;
}

std::string to_string(Perturbation::Family family) {
    switch (family) {
        case Perturbation::Family::point_mass: return "point_mass";
        case Perturbation::Family::uniform_box: return "uniform_box";
        case Perturbation::Family::gaussian: return "gaussian";
    }
    return "?";
}

Perturbation::Family parse_perturbation_family(const std::string& text) {
    if (text == "point_mass") return Perturbation::Family::point_mass;
    if (text == "uniform_box") return Perturbation::Family::uniform_box;
    if (text == "gaussian") return Perturbation::Family::gaussian;
    throw std::invalid_argument("unknown perturbation family '" + text + "'");
}

}  // namespace cubeph
