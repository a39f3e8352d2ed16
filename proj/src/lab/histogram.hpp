#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "persistence.hpp"

namespace cubeph {

/// One rectangle of the fineness-l family, in units of N = 2^(l+1):
/// ((i-1)/N, i/N] x ((j-1)/N, j/N] for 2 <= i <= j - 2, j <= l N, plus the
/// strips [0, 1/N] x ((j-1)/N, j/N] for 3 <= j <= l N, which use i = 1.
struct Rectangle {
    int i = 0;
    int j = 0;
    double s_lo = 0, s_hi = 0, t_lo = 0, t_hi = 0;

    bool strip() const { return i == 1; }
    bool contains(double birth, double death) const;
};

/// Every rectangle of the family, ordered by (i, j).
std::vector<Rectangle> rectangles(int l);

/// Weighted counts of diagram points per rectangle, with separate counters
/// for finite pairs outside every rectangle and for infinite deaths.
class Histogram {
public:
    using Key = std::pair<int, int>;

    explicit Histogram(int l);

    int fineness() const { return l_; }
    /// N = 2^(l+1)
    int denominator() const { return 1 << (l_ + 1); }

    /// (i, j) of the rectangle holding a finite pair, if any.
    std::optional<Key> locate(double birth, double death) const;
    Rectangle rectangle(int i, int j) const;

    void add(double birth, double death, double weight = 1.0);
    void merge(const Histogram& other);
    void scale(double factor);

    /// Nonzero cells only, ordered by (i, j).
    const std::map<Key, double>& counts() const { return counts_; }
    double count(int i, int j) const;
    double overflow() const { return overflow_; }
    double infinite() const { return infinite_; }
    double total() const;

private:
    int l_;
    std::map<Key, double> counts_;
    double overflow_ = 0;
    double infinite_ = 0;
};

Histogram histogram(const PersistenceDiagram& diagram, int q, int l);

}  // namespace cubeph
