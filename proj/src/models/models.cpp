#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubeph {

namespace {

constexpr std::uint32_t kTagUpper = 1;
constexpr std::uint32_t kTagLower = 2;
constexpr std::uint32_t kTagLattice = 3;
constexpr std::uint32_t kTagBall = 4;

constexpr int kCoordLimit = 1 << 15;

// 16 bits per coordinate, two coordinates per word.
std::array<std::uint32_t, 3> pack(std::span<const int> coords) {
    std::array<std::uint32_t, 3> id{};
    for (std::size_t a = 0; a < coords.size(); ++a) {
        if (coords[a] <= -kCoordLimit || coords[a] >= kCoordLimit)
            throw std::out_of_range("coordinate too large for the variable key");
        const auto v = static_cast<std::uint32_t>(coords[a] + kCoordLimit) & 0xFFFFu;
        id[a / 2] |= v << (16 * (a % 2));
    }
    return id;
}

std::array<int, kMaxDim> doubled_coords(const CellGrid& grid, std::size_t index) {
    std::array<int, kMaxDim> c{};
    for (int a = 0; a < grid.dim(); ++a) c[a] = 2 * grid.box().lo[a] + grid.offset(index, a);
    return c;
}

// Index in `outer` of the cell at `index` of `inner`; inner must sit inside outer.
std::size_t embed(const CellGrid& inner, const CellGrid& outer, std::size_t index) {
    std::size_t out = 0;
    for (int a = 0; a < inner.dim(); ++a) {
        const int shift = 2 * (inner.box().lo[a] - outer.box().lo[a]);
        out += static_cast<std::size_t>(inner.offset(index, a) + shift) * outer.stride(a);
    }
    return out;
}

// v <- max of v over all sub-cubes, one axis at a time.
void max_over_faces(const CellGrid& grid, std::vector<double>& v) {
    for (int a = 0; a < grid.dim(); ++a) {
        const std::size_t s = grid.stride(a);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (grid.extends(i, a)) v[i] = std::max({v[i - s], v[i], v[i + s]});
    }
}

// v <- min of v over all cofaces, one axis at a time; cells on the grid's
// outer layer use whatever neighbours exist.
void min_over_cofaces(const CellGrid& grid, std::vector<double>& v) {
    for (int a = 0; a < grid.dim(); ++a) {
        const std::size_t s = grid.stride(a);
        const int last = grid.extent(a) - 1;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid.extends(i, a)) continue;
            const int o = grid.offset(i, a);
            if (o > 0) v[i] = std::min(v[i], v[i - s]);
            if (o < last) v[i] = std::min(v[i], v[i + s]);
        }
    }
}

Filtration from_values(const Box& box, const CellGrid& source, const std::vector<double>& v) {
    Filtration f(box);
    const CellGrid& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) f.set_birth_at(i, v[embed(grid, source, i)]);
    return f;
}

Filtration sample_upper_box(const ModelSpec& spec, const Box& box, const Seed& seed) {
    // Marks are needed on every coface of a box cube: doubled coordinates
    // [2lo-1, 2hi+1], which the one-unit halo covers.
    const Box halo = box.grown(1);
    const CellGrid grid(halo);
    const CounterStream stream(seed.master, seed.trial, kTagUpper);
    std::vector<double> v(grid.size(), kNever);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto c = doubled_coords(grid, i);
        bool needed = true;
        for (int a = 0; a < box.dim; ++a)
            if (c[a] < 2 * box.lo[a] - 1 || c[a] > 2 * box.hi[a] + 1) needed = false;
        if (!needed) continue;
        const auto id = pack(std::span<const int>(c.data(), static_cast<std::size_t>(box.dim)));
        v[i] = spec.marks[static_cast<std::size_t>(grid.dimension(i))].quantile(stream.uniform(id, 0));
    }
    min_over_cofaces(grid, v);
    return from_values(box, grid, v);
}

Filtration sample_lower_box(const ModelSpec& spec, const Box& box, const Seed& seed) {
    const CellGrid grid(box);
    const CounterStream stream(seed.master, seed.trial, kTagLower);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto c = doubled_coords(grid, i);
        const auto id = pack(std::span<const int>(c.data(), static_cast<std::size_t>(box.dim)));
        v[i] = spec.marks[static_cast<std::size_t>(grid.dimension(i))].quantile(stream.uniform(id, 0));
    }
    max_over_faces(grid, v);
    return from_values(box, grid, v);
}

// Positions x_z on the lattice points of a box, stored densely.
class LatticePositions {
public:
    LatticePositions(const Box& box, const PointField& position) : box_(box) {
        std::size_t total = 1;
        for (int a = box.dim - 1; a >= 0; --a) {
            stride_[a] = total;
            total *= static_cast<std::size_t>(box.hi[a] - box.lo[a] + 1);
        }
        points_.resize(total);
        std::array<int, kMaxDim> z{};
        for (std::size_t i = 0; i < total; ++i) {
            for (int a = 0; a < box.dim; ++a)
                z[a] = box.lo[a] + static_cast<int>((i / stride_[a]) % static_cast<std::size_t>(box.hi[a] - box.lo[a] + 1));
            points_[i] = position(std::span<const int>(z.data(), static_cast<std::size_t>(box.dim)));
        }
    }

    const std::array<double, kMaxDim>& at(std::span<const int> z) const {
        std::size_t i = 0;
        for (int a = 0; a < box_.dim; ++a) i += static_cast<std::size_t>(z[a] - box_.lo[a]) * stride_[a];
        return points_[i];
    }

private:
    Box box_;
    std::array<std::size_t, kMaxDim> stride_{};
    std::vector<std::array<double, kMaxDim>> points_;
};

PointField perturbed_field(const Perturbation& mu, int dim, const Seed& seed, std::uint32_t tag) {
    const CounterStream stream(seed.master, seed.trial, tag);
    return [mu, dim, stream](std::span<const int> z) {
        auto x = mu.draw(stream, pack(z), dim);
        for (int a = 0; a < dim; ++a) x[a] += z[a];
        return x;
    };
}

double distance(const std::array<double, kMaxDim>& x, const std::array<double, kMaxDim>& y, int dim) {
    double s = 0;
    for (int a = 0; a < dim; ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
    return std::sqrt(s);
}

// Any lattice point farther than this (max norm) from a location cannot be
// its nearest perturbed point: the rounded lattice point is within
// sqrt(d)/2 + rho, and perturbations move points by at most rho.
double ball_search_radius(int dim, double rho) { return std::sqrt(static_cast<double>(dim)) / 2 + 2 * rho; }

int ball_reach(const ModelSpec& spec) {
    return static_cast<int>(std::floor(ball_search_radius(spec.dim, spec.perturbation.support_radius(spec.dim))));
}

// Visits the sample points of a cube: grid_points per nondegenerate axis, corners included.
template <class Fn>
void for_each_sample_point(const ElementaryCube& cube, int grid_points, Fn&& fn) {
    const int d = cube.ambient_dim();
    std::array<int, kMaxDim> axes{};
    int q = 0;
    for (int a = 0; a < d; ++a)
        if (cube.extends(a)) axes[q++] = a;
    std::array<int, kMaxDim> step{};
    std::array<double, kMaxDim> p{};
    while (true) {
        for (int a = 0; a < d; ++a) p[a] = cube.base(a);
        for (int k = 0; k < q; ++k) p[axes[k]] += static_cast<double>(step[k]) / (grid_points - 1);
        fn(p);
        int k = 0;
        while (k < q && ++step[k] == grid_points) step[k++] = 0;
        if (k == q) break;
    }
}

Filtration sample_ball_box(const ModelSpec& spec, const Box& box, const Seed& seed) {
    const int d = spec.dim;
    const double radius = ball_search_radius(d, spec.perturbation.support_radius(d));
    const LatticePositions positions(box.grown(ball_reach(spec)), perturbed_field(spec.perturbation, d, seed, kTagBall));

    Filtration f(box);
    const CellGrid& grid = f.grid();
    std::vector<double> v(grid.size());
    std::array<int, kMaxDim> lo{}, hi{}, z{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double worst = 0;
        for_each_sample_point(grid.cube(i), spec.grid_points, [&](const std::array<double, kMaxDim>& p) {
            for (int a = 0; a < d; ++a) {
                lo[a] = static_cast<int>(std::ceil(p[a] - radius));
                hi[a] = static_cast<int>(std::floor(p[a] + radius));
                z[a] = lo[a];
            }
            double best = kNever;
            while (true) {
                best = std::min(best, distance(p, positions.at(std::span<const int>(z.data(), static_cast<std::size_t>(d))), d));
                int a = d - 1;
                while (a >= 0 && z[a] == hi[a]) {
                    z[a] = lo[a];
                    --a;
                }
                if (a < 0) break;
                ++z[a];
            }
            worst = std::max(worst, best);
        });
        v[i] = worst;
    }
    max_over_faces(grid, v);  // a no-op while the sample grid includes corners
    for (std::size_t i = 0; i < grid.size(); ++i) f.set_birth_at(i, v[i]);
    return f;
}

ModelSpec marks_spec(ModelKind kind, int dim, std::span<const Distribution> marks) {
    ModelSpec spec;
    spec.kind = kind;
    spec.dim = dim;
    spec.marks.assign(marks.begin(), marks.end());
    return spec;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::upper: return "upper";
        case ModelKind::lower: return "lower";
        case ModelKind::perturbed_lattice: return "perturbed_lattice";
        case ModelKind::ball_cover: return "ball_cover";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "upper") return ModelKind::upper;
    if (text == "lower") return ModelKind::lower;
    if (text == "perturbed_lattice") return ModelKind::perturbed_lattice;
    if (text == "ball_cover") return ModelKind::ball_cover;
    throw std::invalid_argument("unknown model '" + text + "'");
}

void ModelSpec::check() const {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("model dimension must lie in [1, 6]");
    switch (kind) {
        case ModelKind::upper:
        case ModelKind::lower:
            if (static_cast<int>(marks.size()) != dim + 1)
                throw std::invalid_argument("upper and lower models need d+1 mark laws F_0..F_d");
            for (const auto& m : marks) m.check();
            break;
        case ModelKind::perturbed_lattice:
            perturbation.check(dim);
            break;
        case ModelKind::ball_cover:
            perturbation.check(dim);
            if (!std::isfinite(perturbation.support_radius(dim)))
                throw std::invalid_argument("ball cover needs a compactly supported perturbation");
            if (grid_points < 2) throw std::invalid_argument("ball cover needs at least 2 grid points per axis");
            break;
    }
}

int ModelSpec::dependence_range() const {
    switch (kind) {
        case ModelKind::upper: return 1;
        case ModelKind::lower:
        case ModelKind::perturbed_lattice: return 0;
        case ModelKind::ball_cover:
            return static_cast<int>(std::ceil(2 * ball_search_radius(dim, perturbation.support_radius(dim))));
    }
    return 0;
}

Filtration sample(const ModelSpec& spec, const Box& box, const Seed& seed) {
    if (box.dim != spec.dim) throw std::invalid_argument("box and model dimensions differ");
    switch (spec.kind) {
        case ModelKind::upper: return sample_upper_box(spec, box, seed);
        case ModelKind::lower: return sample_lower_box(spec, box, seed);
        case ModelKind::perturbed_lattice:
            return perturbed_lattice_births(box, perturbed_field(spec.perturbation, spec.dim, seed, kTagLattice));
        case ModelKind::ball_cover: return sample_ball_box(spec, box, seed);
    }
    throw std::logic_error("unhandled model");
}

Filtration sample(const ModelSpec& spec, int n, const Seed& seed) {
    return sample(spec, Box::from_window(Window{spec.dim, n}), seed);
}

Filtration sample_upper(int dim, int n, std::span<const Distribution> marks, const Seed& seed) {
    const auto spec = marks_spec(ModelKind::upper, dim, marks);
    spec.check();
    return sample(spec, n, seed);
}

Filtration sample_lower(int dim, int n, std::span<const Distribution> marks, const Seed& seed) {
    const auto spec = marks_spec(ModelKind::lower, dim, marks);
    spec.check();
    return sample(spec, n, seed);
}

Filtration sample_perturbed_lattice(int dim, int n, const Perturbation& mu, const Seed& seed) {
    ModelSpec spec;
    spec.kind = ModelKind::perturbed_lattice;
    spec.dim = dim;
    spec.perturbation = mu;
    spec.check();
    return sample(spec, n, seed);
}

Filtration sample_ball_cover(int dim, int n, const Perturbation& mu, int grid_points, const Seed& seed) {
    ModelSpec spec;
    spec.kind = ModelKind::ball_cover;
    spec.dim = dim;
    spec.perturbation = mu;
    spec.grid_points = grid_points;
    spec.check();
    return sample(spec, n, seed);
}

Filtration block_copy(const ModelSpec& spec, int k, int r, std::span<const int> z, const Seed& seed) {
    if (!(r >= 0 && k > r)) throw std::invalid_argument("blocks need k > r >= 0");
    if (2 * r <= spec.dependence_range()) throw std::invalid_argument("blocks not independent: need 2r > R");
    if (static_cast<int>(z.size()) != spec.dim) throw std::invalid_argument("block offset must have d coordinates");
    return sample(spec, Box::block(spec.dim, k - r, r, z), seed);
}

VariableDomain variable_domain(const ModelSpec& spec, const Box& box) {
    VariableDomain out;
    out.keys = box;
    switch (spec.kind) {
        case ModelKind::upper:
            out.doubled = true;
            for (int a = 0; a < box.dim; ++a) {
                out.keys.lo[a] = 2 * box.lo[a] - 1;
                out.keys.hi[a] = 2 * box.hi[a] + 1;
            }
            break;
        case ModelKind::lower:
            out.doubled = true;
            for (int a = 0; a < box.dim; ++a) {
                out.keys.lo[a] = 2 * box.lo[a];
                out.keys.hi[a] = 2 * box.hi[a];
            }
            break;
        case ModelKind::perturbed_lattice:
            break;
        case ModelKind::ball_cover:
            out.keys = box.grown(ball_reach(spec));
            break;
    }
    return out;
}

std::array<double, kMaxDim> lattice_position(const ModelSpec& spec, std::span<const int> z, const Seed& seed) {
    if (spec.kind != ModelKind::perturbed_lattice && spec.kind != ModelKind::ball_cover)
        throw std::invalid_argument("only lattice-point models have positions");
    const auto tag = spec.kind == ModelKind::ball_cover ? kTagBall : kTagLattice;
    return perturbed_field(spec.perturbation, spec.dim, seed, tag)(z);
}

Filtration perturbed_lattice_births(const Box& box, const PointField& position) {
    Filtration f(box);
    const CellGrid& grid = f.grid();
    const int d = box.dim;
    const LatticePositions positions(box, position);
    std::vector<double> v(grid.size(), 0.0);
    std::array<int, kMaxDim> tail{}, head{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.dimension(i) != 1) continue;
        const auto cube = grid.cube(i);
        for (int a = 0; a < d; ++a) {
            tail[a] = cube.lower(a);
            head[a] = cube.upper(a);
        }
        const auto span = static_cast<std::size_t>(d);
        v[i] = distance(positions.at(std::span<const int>(tail.data(), span)),
                        positions.at(std::span<const int>(head.data(), span)), d);
    }
    max_over_faces(grid, v);
    for (std::size_t i = 0; i < grid.size(); ++i) f.set_birth_at(i, v[i]);
    return f;
}

double covering_radius(const ElementaryCube& cube, std::span<const std::array<double, kMaxDim>> points,
                       int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points per axis");
    if (points.empty()) return kNever;
    double worst = 0;
    for_each_sample_point(cube, grid_points, [&](const std::array<double, kMaxDim>& p) {
        double best = kNever;
        for (const auto& x : points) best = std::min(best, distance(p, x, cube.ambient_dim()));
        worst = std::max(worst, best);
    });
    return worst;
}

}  // namespace cubeph
