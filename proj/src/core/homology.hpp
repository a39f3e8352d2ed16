#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cube.hpp"
#include "sparse.hpp"

namespace cubeph {

class NotFaceClosed : public std::invalid_argument {
public:
    explicit NotFaceClosed(const std::string& what) : std::invalid_argument(what) {}
};

/// Matrix of the q-th boundary map in the canonical cube bases.
template <class Scalar>
struct BoundaryMatrix {
    std::vector<ElementaryCube> row_cubes;  // (q-1)-cubes, canonical order
    std::vector<ElementaryCube> col_cubes;  // q-cubes, canonical order
    SparseMatrix<Scalar> matrix;
};

/// Sorted, deduplicated q-cubes of a cube list.
std::vector<ElementaryCube> cubes_of_dimension(std::span<const ElementaryCube> set, int q);

template <class Scalar = Mersenne31>
BoundaryMatrix<Scalar> boundary_matrix(std::span<const ElementaryCube> set, int q) {
    if (q < 1) throw std::invalid_argument("boundary_matrix needs q >= 1");
    BoundaryMatrix<Scalar> out;
    out.row_cubes = cubes_of_dimension(set, q - 1);
    out.col_cubes = cubes_of_dimension(set, q);
    std::unordered_map<ElementaryCube, std::size_t, CubeHash> row_index;
    row_index.reserve(out.row_cubes.size());
    for (std::size_t i = 0; i < out.row_cubes.size(); ++i) row_index.emplace(out.row_cubes[i], i);
    out.matrix = SparseMatrix<Scalar>(out.row_cubes.size(), out.col_cubes.size());
    for (std::size_t j = 0; j < out.col_cubes.size(); ++j) {
        typename SparseMatrix<Scalar>::Column col;
        for (const auto& face : boundary_faces(out.col_cubes[j])) {
            auto it = row_index.find(face.cube);
            if (it == row_index.end())
                throw NotFaceClosed("not face-closed: face " + face.cube.to_string() + " of " +
                                    out.col_cubes[j].to_string() + " is missing");
            col.push_back({it->second, Scalar(face.sign)});
        }
        out.matrix.set_column(j, std::move(col));
    }
    return out;
}

/// Betti number over the chosen coefficient field.
std::int64_t betti(std::span<const ElementaryCube> set, int q, FieldKind field = FieldKind::mersenne31);

/// (beta_0, ..., beta_d) for a face-closed set in ambient dimension d.
std::vector<std::int64_t> betti_numbers(std::span<const ElementaryCube> set, int d,
                                        FieldKind field = FieldKind::mersenne31);

/// Adds every face of every listed cube; canonical order, no duplicates.
std::vector<ElementaryCube> face_closure(std::span<const ElementaryCube> cubes);

}  // namespace cubeph
