#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubeph {

inline constexpr int kMaxDim = 6;

/// A product of elementary intervals on the integer grid.
///
/// Axis i is either the nondegenerate interval [base[i], base[i]+1] (extent
/// bit set) or the degenerate point {base[i]}. Ordering is lexicographic on
/// the base tuple, then on the extent bits in increasing axis order; this is
/// the canonical order used for enumeration and for tie-breaking everywhere.
class ElementaryCube {
public:
    ElementaryCube() = default;
    ElementaryCube(std::span<const int> base, std::span<const int> extent);

    /// Builds a cube from doubled coordinates c[i] = 2*base[i] + extent[i].
    static ElementaryCube from_doubled(std::span<const int> doubled);

    /// Parses the canonical text form "d;b1,...,bd;bits".
    static ElementaryCube parse(std::string_view text);

    int ambient_dim() const { return dim_; }
    int dimension() const;
    int base(int axis) const { return base_[axis]; }
    bool extends(int axis) const { return (extent_ >> axis) & 1u; }
    int doubled(int axis) const { return 2 * base_[axis] + (extends(axis) ? 1 : 0); }
    std::uint8_t extent_mask() const { return extent_; }

    /// Lower and upper endpoint of the interval on one axis.
    int lower(int axis) const { return base_[axis]; }
    int upper(int axis) const { return base_[axis] + (extends(axis) ? 1 : 0); }

    ElementaryCube translated(std::span<const int> offset) const;

    std::string to_string() const;

    friend bool operator==(const ElementaryCube&, const ElementaryCube&) = default;
    friend std::strong_ordering operator<=>(const ElementaryCube& a, const ElementaryCube& b);

private:
    std::array<std::int32_t, kMaxDim> base_{};
    std::uint8_t extent_ = 0;
    std::uint8_t dim_ = 0;

    friend struct CubeHash;
};

struct CubeHash {
    std::size_t operator()(const ElementaryCube& c) const noexcept;
};

struct SignedCube {
    ElementaryCube cube;
    int sign = 1;
    friend bool operator==(const SignedCube&, const SignedCube&) = default;
};

/// The centered window [-n, n]^d.
struct Window {
    int dim = 1;
    int n = 0;

    double volume() const;
};

/// Axis-aligned integer box [lo_1,hi_1] x ... x [lo_d,hi_d]. Windows and the
/// translated blocks 2(n+r)z + [-n,n]^d are both boxes.
struct Box {
    int dim = 1;
    std::array<int, kMaxDim> lo{};
    std::array<int, kMaxDim> hi{};

    static Box from_window(const Window& w);
    /// 2(n+r)z + [-n,n]^d
    static Box block(int dim, int n, int r, std::span<const int> z);

    Box grown(int margin) const;
    bool contains(const ElementaryCube& c) const;
    bool contains(const Box& other) const;
    double volume() const;
    friend bool operator==(const Box&, const Box&) = default;
};

/// Signed codimension-one faces, two per nondegenerate axis in increasing axis
/// order: the upward face with sign (-1)^(j-1), then the downward face with the
/// opposite sign. Empty for vertices.
std::vector<SignedCube> boundary_faces(const ElementaryCube& cube);

/// Every elementary cube containing `cube` (itself included): 3^(d - dim).
std::vector<ElementaryCube> cofaces_containing(const ElementaryCube& cube);

/// Every elementary cube contained in `cube` (itself included): 3^dim.
std::vector<ElementaryCube> faces_contained(const ElementaryCube& cube);

/// All q-cubes inside the window, canonically ordered.
std::vector<ElementaryCube> enumerate_cubes(const Window& window, int q);
std::vector<ElementaryCube> enumerate_cubes(const Box& box, int q);

/// C(d,q) (2n)^q (2n+1)^(d-q)
std::int64_t window_cube_count(const Window& window, int q);

bool cube_in_window(const ElementaryCube& cube, const Window& window);

std::int64_t binomial(int n, int k);

/// Dense indexing of every cube in a box through doubled coordinates.
///
/// Cell c has doubled coordinate 2*lo_i + offset_i on axis i, with
/// offset_i in [0, 2(hi_i - lo_i)]. Faces and cofaces are index offsets of
/// +-stride, which is what makes the samplers and reductions cheap.
class CellGrid {
public:
    explicit CellGrid(const Box& box);

    const Box& box() const { return box_; }
    int dim() const { return box_.dim; }
    std::size_t size() const { return size_; }
    std::size_t stride(int axis) const { return stride_[axis]; }
    int extent(int axis) const { return shape_[axis]; }

    /// Offset (0-based) of the cell along one axis.
    int offset(std::size_t index, int axis) const {
        return static_cast<int>((index / stride_[axis]) % static_cast<std::size_t>(shape_[axis]));
    }
    /// Odd offsets are nondegenerate intervals (lo is even in doubled units).
    bool extends(std::size_t index, int axis) const { return offset(index, axis) & 1; }
    int dimension(std::size_t index) const;

    ElementaryCube cube(std::size_t index) const;
    /// Returns size() when the cube lies outside the box.
    std::size_t index_of(const ElementaryCube& cube) const;

    /// Signed faces as (index, sign) using the boundary_faces convention.
    template <class Fn>
    void for_each_face(std::size_t index, Fn&& fn) const {
        int j = 0;
        for (int axis = 0; axis < box_.dim; ++axis) {
            if (!extends(index, axis)) continue;
            const int sign = (j % 2 == 0) ? 1 : -1;
            fn(index + stride_[axis], sign);
            fn(index - stride_[axis], -sign);
            ++j;
        }
    }

private:
    Box box_;
    std::array<int, kMaxDim> shape_{};
    std::array<std::size_t, kMaxDim> stride_{};
    std::size_t size_ = 0;
};

}  // namespace cubeph
