#include "homology.hpp"

#include <algorithm>
#include <unordered_set>

namespace cubeph {

std::vector<ElementaryCube> cubes_of_dimension(std::span<const ElementaryCube> set, int q) {
    std::vector<ElementaryCube> out;
    for (const auto& c : set)
        if (c.dimension() == q) out.push_back(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

template <class Scalar>
std::int64_t betti_in(std::span<const ElementaryCube> set, int q) {
    const auto q_cubes = cubes_of_dimension(set, q);
    std::int64_t rank_q = 0;
    if (q >= 1) rank_q = static_cast<std::int64_t>(rank(boundary_matrix<Scalar>(set, q).matrix));
    const auto above = boundary_matrix<Scalar>(set, q + 1);
    const auto rank_above = static_cast<std::int64_t>(rank(above.matrix));
    return static_cast<std::int64_t>(q_cubes.size()) - rank_q - rank_above;
}

}  // namespace

std::int64_t betti(std::span<const ElementaryCube> set, int q, FieldKind field) {
    if (q < 0) throw std::invalid_argument("Betti degree must be nonnegative");
    switch (field) {
        case FieldKind::gf2: return betti_in<GF2>(set, q);
        case FieldKind::rational: return betti_in<Rational>(set, q);
        case FieldKind::mersenne31: break;
    }
    return betti_in<Mersenne31>(set, q);
}

std::vector<std::int64_t> betti_numbers(std::span<const ElementaryCube> set, int d, FieldKind field) {
    std::vector<std::int64_t> out;
    for (int q = 0; q <= d; ++q) out.push_back(betti(set, q, field));
    return out;
}

std::vector<ElementaryCube> face_closure(std::span<const ElementaryCube> cubes) {
    std::unordered_set<ElementaryCube, CubeHash> seen;
    for (const auto& c : cubes)
        for (const auto& f : faces_contained(c)) seen.insert(f);
    std::vector<ElementaryCube> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cubeph
