#include "persistence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "field.hpp"
#include "rng.hpp"
#include "sparse.hpp"

namespace cubeph {

void PersistenceDiagram::add(int q, double birth, double death) {
    if (q < 0 || q > max_degree()) throw std::out_of_range("diagram degree out of range");
    if (!(birth >= 0) || !(death >= birth))
        throw std::invalid_argument("pair must satisfy 0 <= birth <= death");
    if (birth == death) return;
    auto& v = by_degree_[static_cast<std::size_t>(q)];
    const BirthDeathPair pair{birth, death};
    v.insert(std::upper_bound(v.begin(), v.end(), pair), pair);
}

std::span<const BirthDeathPair> PersistenceDiagram::pairs(int q) const {
    if (q < 0 || q > max_degree()) return {};
    return by_degree_[static_cast<std::size_t>(q)];
}

std::size_t PersistenceDiagram::size() const {
    std::size_t n = 0;
    for (const auto& v : by_degree_) n += v.size();
    return n;
}

std::size_t PersistenceDiagram::infinite_count(int q) const {
    const auto p = pairs(q);
    return static_cast<std::size_t>(
        std::count_if(p.begin(), p.end(), [](const BirthDeathPair& x) { return x.death == kNever; }));
}

PersistenceDiagram compute_diagram(const Filtration& f, const DiagramOptions& options) {
    if (auto v = validate(f)) throw InvalidFiltration(v->message());

    const CellGrid& grid = f.grid();
    const int d = f.dim();
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (f.birth_at(i) != kNever) cells.push_back(i);

    std::vector<int> dims(cells.size());
    std::vector<ElementaryCube> cubes;
    std::vector<std::uint64_t> tie_key;
    cubes.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        dims[k] = grid.dimension(cells[k]);
        cubes.push_back(grid.cube(cells[k]));
    }
    if (options.tie_shuffle_seed != 0) {
        tie_key.resize(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            tie_key[k] = splitmix64(options.tie_shuffle_seed ^ splitmix64(cells[k]));
    }

    // filtration order: (birth, dimension, canonical cube order); faces come first
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ta = f.birth_at(cells[a]), tb = f.birth_at(cells[b]);
        if (ta != tb) return ta < tb;
        if (dims[a] != dims[b]) return dims[a] < dims[b];
        if (!tie_key.empty() && tie_key[a] != tie_key[b]) return tie_key[a] < tie_key[b];
        return cubes[a] < cubes[b];
    });

    std::vector<std::size_t> position(grid.size(), 0);
    for (std::size_t p = 0; p < order.size(); ++p) position[cells[order[p]]] = p;

    const std::size_t count = order.size();
    SparseMatrix<Mersenne31> boundary(count, count);
    std::vector<int> dim_at(count);
    std::vector<double> birth_at(count);
    for (std::size_t p = 0; p < count; ++p) {
        const std::size_t cell = cells[order[p]];
        dim_at[p] = dims[order[p]];
        birth_at[p] = f.birth_at(cell);
        SparseMatrix<Mersenne31>::Column col;
        grid.for_each_face(cell, [&](std::size_t face, int sign) {
            col.push_back({position[face], Mersenne31(sign)});
        });
        boundary.set_column(p, std::move(col));
    }

    // top dimension first so that every pivot found can clear a lower column
    ColumnReducer<Mersenne31> reducer(boundary, false);
    std::vector<char> cleared(count, 0);
    for (int q = d; q >= 1; --q) {
        for (std::size_t p = 0; p < count; ++p) {
            if (dim_at[p] != q || cleared[p]) continue;
            const auto low = reducer.reduce(p);
            if (low != ColumnReducer<Mersenne31>::kNone) {
                cleared[static_cast<std::size_t>(low)] = 1;
                reducer.clear(static_cast<std::size_t>(low));
            }
        }
    }

    PersistenceDiagram diagram(std::max(d - 1, 0));
    for (std::size_t p = 0; p < count; ++p) {
        const auto low = reducer.low(p);
        if (low != ColumnReducer<Mersenne31>::kNone) {
            const auto row = static_cast<std::size_t>(low);
            diagram.add(dim_at[row], birth_at[row], birth_at[p]);
        } else if (reducer.owner(p) == ColumnReducer<Mersenne31>::kNone) {
            // a cycle that is never filled in
            if (dim_at[p] >= d) throw std::logic_error("essential class in top degree");
            diagram.add(dim_at[p], birth_at[p], kNever);
        }
    }
    return diagram;
}

std::int64_t quadrant_mass(const PersistenceDiagram& diagram, int q, double s, double t) {
    if (!(s <= t) || s < 0) throw std::invalid_argument("quadrant mass needs 0 <= s <= t");
    std::int64_t n = 0;
    for (const auto& p : diagram.pairs(q))
        if (p.birth <= s && p.death > t) ++n;
    return n;
}

std::int64_t rectangle_mass(const PersistenceDiagram& diagram, int q, double s1, double s2, double t1,
                            double t2) {
    if (!(0 <= s1 && s1 <= s2 && s2 <= t1 && t1 <= t2 && t2 < kNever))
        throw std::invalid_argument("rectangle mass needs 0 <= s1 <= s2 <= t1 <= t2 < inf");
    std::int64_t n = 0;
    for (const auto& p : diagram.pairs(q))
        if (p.birth > s1 && p.birth <= s2 && p.death > t1 && p.death <= t2) ++n;
    return n;
}

namespace {

// Cells of one dimension with birth <= t, plus a lookup from grid index.
struct Level {
    std::vector<std::size_t> cells;
    std::unordered_map<std::size_t, std::size_t> index;
};

Level level(const Filtration& f, int q, double t) {
    Level l;
    const CellGrid& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (f.birth_at(i) <= t && grid.dimension(i) == q) {
            l.index.emplace(i, l.cells.size());
            l.cells.push_back(i);
        }
    }
    return l;
}

SparseMatrix<Mersenne31> boundary_between(const Filtration& f, const Level& rows, const Level& cols) {
    SparseMatrix<Mersenne31> m(rows.cells.size(), cols.cells.size());
    for (std::size_t j = 0; j < cols.cells.size(); ++j) {
        SparseMatrix<Mersenne31>::Column col;
        f.grid().for_each_face(cols.cells[j], [&](std::size_t face, int sign) {
            col.push_back({rows.index.at(face), Mersenne31(sign)});
        });
        m.set_column(j, std::move(col));
    }
    return m;
}

}  // namespace

std::int64_t persistent_betti_direct(const Filtration& f, int q, double s, double t) {
    if (!(s <= t)) throw std::invalid_argument("persistent Betti number needs s <= t");
    if (s < 0 || t == kNever) throw std::invalid_argument("persistent Betti number needs 0 <= s <= t < inf");
    if (q < 0 || q >= f.dim()) throw std::invalid_argument("persistent Betti degree must satisfy 0 <= q < d");
    if (auto v = validate(f)) throw InvalidFiltration(v->message());

    const Level cells_s = level(f, q, s);
    const Level cells_t = level(f, q, t);
    const Level above_t = level(f, q + 1, t);

    // Z_q(X(s)) as explicit vectors over the q-cubes of X(s)
    std::vector<SparseMatrix<Mersenne31>::Column> cycles;
    if (q == 0) {
        for (std::size_t j = 0; j < cells_s.cells.size(); ++j) cycles.push_back({{j, Mersenne31(1)}});
    } else {
        const Level below_s = level(f, q - 1, s);
        cycles = kernel_basis(boundary_between(f, below_s, cells_s));
    }

    // B_q(X(t)) columns, in the q-cube basis of X(t)
    const SparseMatrix<Mersenne31> boundaries = boundary_between(f, cells_t, above_t);
    const auto rank_b = static_cast<std::int64_t>(rank(boundaries));

    // Z_q(X(s)) + B_q(X(t)), both re-expressed over K_q(X(t))
    SparseMatrix<Mersenne31> sum(cells_t.cells.size(), 0);
    for (const auto& z : cycles) {
        SparseMatrix<Mersenne31>::Column col;
        for (const auto& e : z) col.push_back({cells_t.index.at(cells_s.cells[e.row]), e.value});
        sum.append_column(std::move(col));
    }
    for (std::size_t j = 0; j < boundaries.cols(); ++j) sum.append_column(boundaries.column(j));
    const auto rank_sum = static_cast<std::int64_t>(rank(sum));

    const auto dim_z = static_cast<std::int64_t>(cycles.size());
    const std::int64_t dim_intersection = dim_z + rank_b - rank_sum;
    return dim_z - dim_intersection;
}

}  // namespace cubeph
