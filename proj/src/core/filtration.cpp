#include "filtration.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace cubeph {

Filtration::Filtration(const Box& box) : grid_(box), births_(grid_.size(), kNever) {}

bool Filtration::is_centered() const {
    const Box& b = box();
    for (int i = 0; i < b.dim; ++i)
        if (b.lo[i] != -b.hi[0] || b.hi[i] != b.hi[0]) return false;
    return true;
}

Window Filtration::window() const {
    if (!is_centered()) throw std::logic_error("filtration box is not a centered window");
    return Window{dim(), box().hi[0]};
}

double Filtration::birth(const ElementaryCube& cube) const {
    const auto index = grid_.index_of(cube);
    return index == grid_.size() ? kNever : births_[index];
}

void Filtration::set_birth(const ElementaryCube& cube, double t) {
    const auto index = grid_.index_of(cube);
    if (index == grid_.size())
        throw std::out_of_range("cube " + cube.to_string() + " lies outside the filtration box");
    births_[index] = t;
}

Filtration Filtration::restricted(const Box& sub) const {
    if (sub.dim != dim() || !box().contains(sub))
        throw std::invalid_argument("restriction box must lie inside the filtration box");
    Filtration out(sub);
    for (std::size_t i = 0; i < out.grid_.size(); ++i)
        out.births_[i] = births_[grid_.index_of(out.grid_.cube(i))];
    return out;
}

std::size_t Filtration::finite_count() const {
    return static_cast<std::size_t>(
        std::count_if(births_.begin(), births_.end(), [](double t) { return t != kNever; }));
}

std::vector<std::size_t> Filtration::finite_counts_by_dimension() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(dim()) + 1, 0);
    for (std::size_t i = 0; i < births_.size(); ++i)
        if (births_[i] != kNever) ++counts[static_cast<std::size_t>(grid_.dimension(i))];
    return counts;
}

double Filtration::max_finite_birth() const {
    double m = -kNever;
    for (double t : births_)
        if (t != kNever) m = std::max(m, t);
    return m;
}

bool operator==(const Filtration& a, const Filtration& b) {
    if (!(a.box() == b.box())) return false;
    // bitwise equality, so that -0.0 and NaN payloads would be caught too
    return std::equal(a.births_.begin(), a.births_.end(), b.births_.begin(),
                      [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; });
}

std::string Violation::message() const {
    std::ostringstream os;
    os << "monotone face condition violated: face " << face.to_string() << " (birth " << face_birth
       << ") > cube " << cube.to_string() << " (birth " << cube_birth << ")";
    return os.str();
}

std::optional<Violation> validate(const Filtration& f) {
    const auto& grid = f.grid();
    // canonical order so that "first violation" does not depend on the grid layout
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (f.birth_at(i) != kNever) order.push_back(i);
    std::vector<ElementaryCube> cubes;
    cubes.reserve(order.size());
    for (auto i : order) cubes.push_back(grid.cube(i));
    std::vector<std::size_t> perm(order.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return cubes[a] < cubes[b]; });

    for (auto k : perm) {
        const std::size_t index = order[k];
        const double t = f.birth_at(index);
        if (std::isnan(t) || t < 0) {
            Violation v{cubes[k], cubes[k], t, t};
            return v;
        }
        std::optional<Violation> found;
        grid.for_each_face(index, [&](std::size_t face, int) {
            if (!found && !(f.birth_at(face) <= t))
                found = Violation{grid.cube(face), cubes[k], f.birth_at(face), t};
        });
        if (found) return found;
    }
    return std::nullopt;
}

Filtration restrict(const Filtration& filtration, int m) {
    const Window w = filtration.window();
    if (m < 0 || m > w.n)
        throw std::invalid_argument("restriction window m=" + std::to_string(m) + " exceeds n=" +
                                    std::to_string(w.n));
    return filtration.restricted(Box::from_window(Window{w.dim, m}));
}

std::vector<ElementaryCube> sublevel(const Filtration& f, double t) {
    std::vector<ElementaryCube> out;
    for (std::size_t i = 0; i < f.grid().size(); ++i)
        if (f.birth_at(i) <= t) out.push_back(f.grid().cube(i));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cubeph
