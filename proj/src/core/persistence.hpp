#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "filtration.hpp"

namespace cubeph {

/// Raised when a diagram is requested for a birth map that is not monotone.
class InvalidFiltration : public std::invalid_argument {
public:
    explicit InvalidFiltration(const std::string& what) : std::invalid_argument(what) {}
};

struct BirthDeathPair {
    double birth = 0;
    double death = kNever;
    friend bool operator==(const BirthDeathPair&, const BirthDeathPair&) = default;
    friend auto operator<=>(const BirthDeathPair&, const BirthDeathPair&) = default;
};

/// Degree-indexed multisets of birth-death pairs (degrees 0..max_degree).
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    explicit PersistenceDiagram(int max_degree) : by_degree_(static_cast<std::size_t>(max_degree) + 1) {}

    int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }

    /// Adds a pair; pairs with birth == death are dropped, birth > death throws.
    void add(int q, double birth, double death);

    /// Pairs of degree q, sorted by (birth, death); empty for q out of range.
    std::span<const BirthDeathPair> pairs(int q) const;

    std::size_t size() const;
    std::size_t size(int q) const { return pairs(q).size(); }
    std::size_t infinite_count(int q) const;

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

private:
    std::vector<std::vector<BirthDeathPair>> by_degree_;
};

/// Reduction options for compute_diagram.
struct DiagramOptions {
    /// Shuffles the order of cubes with equal (birth, dimension) using this
    /// seed instead of the canonical cube order. 0 keeps the canonical order.
    std::uint64_t tie_shuffle_seed = 0;
};

/// Persistence diagram of a bounded filtration (degrees 0..d-1) by column
/// reduction of the total boundary matrix over GF(2^31 - 1).
PersistenceDiagram compute_diagram(const Filtration& filtration, const DiagramOptions& options = {});

/// Number of degree-q pairs with birth <= s and death > t (infinite deaths count).
std::int64_t quadrant_mass(const PersistenceDiagram& diagram, int q, double s, double t);

/// Number of degree-q pairs in (s1,s2] x (t1,t2]; needs 0 <= s1 <= s2 <= t1 <= t2 < inf.
std::int64_t rectangle_mass(const PersistenceDiagram& diagram, int q, double s1, double s2, double t1,
                            double t2);

/// Rank of H_q(X(s)) -> H_q(X(t)) from kernels and ranks of boundary maps
/// alone. Never consults compute_diagram.
std::int64_t persistent_betti_direct(const Filtration& filtration, int q, double s, double t);

}  // namespace cubeph
