#include "cube.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cubeph {

namespace {

void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("ambient dimension must lie in [1, 6], got " + std::to_string(d));
}

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    return value;
}

}  // namespace

ElementaryCube::ElementaryCube(std::span<const int> base, std::span<const int> extent) {
    check_dim(static_cast<int>(base.size()));
    if (extent.size() != base.size())
        throw std::invalid_argument("base and extent lengths differ");
    dim_ = static_cast<std::uint8_t>(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        base_[i] = base[i];
        if (extent[i] != 0 && extent[i] != 1)
            throw std::invalid_argument("extent bits must be 0 or 1");
        if (extent[i]) extent_ |= static_cast<std::uint8_t>(1u << i);
    }
}

ElementaryCube ElementaryCube::from_doubled(std::span<const int> doubled) {
    check_dim(static_cast<int>(doubled.size()));
    ElementaryCube c;
    c.dim_ = static_cast<std::uint8_t>(doubled.size());
    for (std::size_t i = 0; i < doubled.size(); ++i) {
        const int v = doubled[i];
        const int odd = v & 1;  // two's complement: -1 & 1 == 1
        c.base_[i] = (v - odd) / 2;
        if (odd) c.extent_ |= static_cast<std::uint8_t>(1u << i);
    }
    return c;
}

ElementaryCube ElementaryCube::parse(std::string_view text) {
    const auto p1 = text.find(';');
    const auto p2 = text.find(';', p1 == std::string_view::npos ? p1 : p1 + 1);
    if (p1 == std::string_view::npos || p2 == std::string_view::npos)
        throw std::invalid_argument("cube text must look like 'd;b1,...,bd;bits': " + std::string(text));
    const int d = parse_int(text.substr(0, p1));
    check_dim(d);
    std::vector<int> base;
    std::string_view rest = text.substr(p1 + 1, p2 - p1 - 1);
    while (true) {
        const auto comma = rest.find(',');
        base.push_back(parse_int(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    const std::string_view bits = text.substr(p2 + 1);
    if (static_cast<int>(base.size()) != d || static_cast<int>(bits.size()) != d)
        throw std::invalid_argument("cube text has wrong arity: " + std::string(text));
    std::vector<int> extent;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("extent must be a 0/1 string");
        extent.push_back(ch - '0');
    }
    return ElementaryCube(base, extent);
}

int ElementaryCube::dimension() const { return std::popcount(extent_); }

ElementaryCube ElementaryCube::translated(std::span<const int> offset) const {
    ElementaryCube c = *this;
    for (int i = 0; i < dim_; ++i) c.base_[i] += offset[i];
    return c;
}

std::string ElementaryCube::to_string() const {
    std::string s = std::to_string(dim_) + ";";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ',';
        s += std::to_string(base_[i]);
    }
    s += ';';
    for (int i = 0; i < dim_; ++i) s += extends(i) ? '1' : '0';
    return s;
}

std::strong_ordering operator<=>(const ElementaryCube& a, const ElementaryCube& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    for (int i = 0; i < a.dim_; ++i)
        if (auto c = a.base_[i] <=> b.base_[i]; c != 0) return c;
    for (int i = 0; i < a.dim_; ++i)
        if (auto c = a.extends(i) <=> b.extends(i); c != 0) return c;
    return std::strong_ordering::equal;
}

std::size_t CubeHash::operator()(const ElementaryCube& c) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ c.extent_ ^ (std::uint64_t{c.dim_} << 8);
    for (int i = 0; i < c.dim_; ++i) {
        h ^= static_cast<std::uint32_t>(c.base_[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

double Window::volume() const { return std::pow(2.0 * n, dim); }

Box Box::from_window(const Window& w) {
    check_dim(w.dim);
    if (w.n < 0) throw std::invalid_argument("window size must be nonnegative");
    Box b;
    b.dim = w.dim;
    for (int i = 0; i < w.dim; ++i) {
        b.lo[i] = -w.n;
        b.hi[i] = w.n;
    }
    return b;
}

Box Box::block(int dim, int n, int r, std::span<const int> z) {
    Box b = from_window(Window{dim, n});
    for (int i = 0; i < dim; ++i) {
        const int shift = 2 * (n + r) * z[i];
        b.lo[i] += shift;
        b.hi[i] += shift;
    }
    return b;
}

Box Box::grown(int margin) const {
    Box b = *this;
    for (int i = 0; i < dim; ++i) {
        b.lo[i] -= margin;
        b.hi[i] += margin;
    }
    return b;
}

bool Box::contains(const ElementaryCube& c) const {
    if (c.ambient_dim() != dim) return false;
    for (int i = 0; i < dim; ++i)
        if (c.lower(i) < lo[i] || c.upper(i) > hi[i]) return false;
    return true;
}

bool Box::contains(const Box& other) const {
    for (int i = 0; i < dim; ++i)
        if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
    return true;
}

double Box::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
    return v;
}

std::vector<SignedCube> boundary_faces(const ElementaryCube& cube) {
    std::vector<SignedCube> out;
    const int d = cube.ambient_dim();
    std::array<int, kMaxDim> doubled{};
    for (int i = 0; i < d; ++i) doubled[i] = cube.doubled(i);
    int j = 0;
    for (int axis = 0; axis < d; ++axis) {
        if (!cube.extends(axis)) continue;
        const int sign = (j % 2 == 0) ? 1 : -1;
        auto face = doubled;
        face[axis] += 1;
        out.push_back({ElementaryCube::from_doubled({face.data(), static_cast<std::size_t>(d)}), sign});
        face[axis] -= 2;
        out.push_back({ElementaryCube::from_doubled({face.data(), static_cast<std::size_t>(d)}), -sign});
        ++j;
    }
    return out;
}

namespace {

// Expands every axis selected by `free_axes` into the given doubled offsets.
template <class Fn>
void expand(const ElementaryCube& cube, bool up, Fn&& fn) {
    const int d = cube.ambient_dim();
    std::array<int, kMaxDim> doubled{};
    for (int i = 0; i < d; ++i) doubled[i] = cube.doubled(i);
    std::vector<int> axes;
    for (int i = 0; i < d; ++i)
        if (cube.extends(i) != up) axes.push_back(i);  // up: degenerate axes, down: nondegenerate
    std::size_t total = 1;
    for (std::size_t k = 0; k < axes.size(); ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        auto c = doubled;
        std::size_t rest = code;
        for (int axis : axes) {
            c[axis] += static_cast<int>(rest % 3) - 1;  // -1, 0, +1
            rest /= 3;
        }
        fn(ElementaryCube::from_doubled({c.data(), static_cast<std::size_t>(d)}));
    }
}

}  // namespace

std::vector<ElementaryCube> cofaces_containing(const ElementaryCube& cube) {
    std::vector<ElementaryCube> out;
    expand(cube, true, [&](const ElementaryCube& c) { out.push_back(c); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementaryCube> faces_contained(const ElementaryCube& cube) {
    std::vector<ElementaryCube> out;
    expand(cube, false, [&](const ElementaryCube& c) { out.push_back(c); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementaryCube> enumerate_cubes(const Box& box, int q) {
    if (q < 0 || q > box.dim)
        throw std::invalid_argument("cube dimension q=" + std::to_string(q) + " out of range [0, d]");
    CellGrid grid(box);
    std::vector<ElementaryCube> out;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.dimension(i) == q) out.push_back(grid.cube(i));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementaryCube> enumerate_cubes(const Window& window, int q) {
    return enumerate_cubes(Box::from_window(window), q);
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::int64_t window_cube_count(const Window& window, int q) {
    if (q < 0 || q > window.dim) return 0;
    std::int64_t count = binomial(window.dim, q);
    for (int i = 0; i < q; ++i) count *= 2 * window.n;
    for (int i = q; i < window.dim; ++i) count *= 2 * window.n + 1;
    return count;
}

bool cube_in_window(const ElementaryCube& cube, const Window& window) {
    return cube.ambient_dim() == window.dim && Box::from_window(window).contains(cube);
}

CellGrid::CellGrid(const Box& box) : box_(box) {
    check_dim(box.dim);
    std::size_t stride = 1;
    for (int axis = box.dim - 1; axis >= 0; --axis) {
        if (box.hi[axis] < box.lo[axis]) throw std::invalid_argument("empty box");
        shape_[axis] = 2 * (box.hi[axis] - box.lo[axis]) + 1;
        stride_[axis] = stride;
        stride *= static_cast<std::size_t>(shape_[axis]);
    }
    size_ = stride;
}

int CellGrid::dimension(std::size_t index) const {
    int q = 0;
    for (int axis = 0; axis < box_.dim; ++axis) q += extends(index, axis) ? 1 : 0;
    return q;
}

ElementaryCube CellGrid::cube(std::size_t index) const {
    std::array<int, kMaxDim> c{};
    for (int axis = 0; axis < box_.dim; ++axis) c[axis] = 2 * box_.lo[axis] + offset(index, axis);
    return ElementaryCube::from_doubled({c.data(), static_cast<std::size_t>(box_.dim)});
}

std::size_t CellGrid::index_of(const ElementaryCube& cube) const {
    if (cube.ambient_dim() != box_.dim) return size_;
    std::size_t index = 0;
    for (int axis = 0; axis < box_.dim; ++axis) {
        const int off = cube.doubled(axis) - 2 * box_.lo[axis];
        if (off < 0 || off >= shape_[axis]) return size_;
        index += static_cast<std::size_t>(off) * stride_[axis];
    }
    return index;
}

}  // namespace cubeph
