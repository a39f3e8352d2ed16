#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "histogram.hpp"
#include "models.hpp"
#include "persistence.hpp"

namespace cubeph {

struct TimePair {
    double s = 0;
    double t = 0;
};

/// Shared Monte Carlo settings. Trial k always uses Seed{seed, k}.
struct MonteCarlo {
    ModelSpec model;
    int trials = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// Persistent Betti numbers of one filtration at each (s, t) pair.
std::vector<std::int64_t> persistent_betti_tuple(const Filtration& f, int q, std::span<const TimePair> pairs);

struct PbEstimate {
    int q = 0;
    int n = 0;
    double volume = 0;
    std::vector<TimePair> pairs;
    /// counts[trial][pair] = beta_q(s, t) of the trial's window.
    std::vector<std::vector<std::int64_t>> counts;
    /// values[trial][pair] = counts / volume
    std::vector<std::vector<double>> values;
    std::vector<double> mean;
    /// Sample standard deviation (n - 1 denominator); 0 for a single trial.
    std::vector<double> std;
};

PbEstimate estimate_pb_density(const MonteCarlo& mc, int q, std::span<const TimePair> pairs, int n);

struct MeanDiagram {
    int q = 0;
    int n = 0;
    double volume = 0;
    int trials = 0;
    /// Sum over trials of the histogram counts.
    Histogram total;
    /// total / (trials * volume)
    Histogram mean;
    /// Quadrant masses of each trial's diagram at `pairs`, divided by volume.
    std::vector<TimePair> pairs;
    std::vector<std::vector<double>> quadrant_values;
};

MeanDiagram estimate_mean_diagram(const MonteCarlo& mc, int q, int n, int l, std::span<const TimePair> pairs = {});

/// Axis-aligned lattice of points, each axis strictly increasing; points are
/// ordered with the last axis varying fastest.
struct Grid {
    std::vector<std::vector<double>> axes;

    /// `count` evenly spaced values from lo to hi on each of h axes.
    static Grid uniform(int h, double lo, double hi, int count);

    void check() const;
    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t size() const;
    std::vector<double> point(std::size_t index) const;
};

struct GridFunction {
    Grid grid;
    std::vector<double> values;
    int n = 0;
    int trials = 0;
    std::string model;
};

/// phi(lambda) = volume^-1 log(mean over samples of exp(<lambda, counts>)),
/// from one common sample set for every lambda; log-sum-exp keeps it finite.
std::vector<double> log_mgf(const std::vector<std::vector<std::int64_t>>& counts, double volume, const Grid& grid);

GridFunction estimate_log_mgf(const MonteCarlo& mc, int q, std::span<const TimePair> pairs, const Grid& lambda_grid,
                              int n);

/// phi*(x) = max over the lambda grid of <lambda, x> - phi(lambda); a lower
/// bound of the full supremum.
GridFunction legendre_transform(const GridFunction& phi, const Grid& x_grid);

/// One estimate per window size, same seeds at every size.
std::vector<PbEstimate> lln_sweep(const MonteCarlo& mc, int q, std::span<const TimePair> pairs,
                                  std::span<const int> n_list);

struct GapReport {
    std::string kind;
    int k = 0, r = 0, m = 0, n = 0, h = 0;
    double measured = 0;
    double bound = 0;
    bool pass = false;
};

/// Big window (2m+1)k against the sum over its blocks 2kz + [-(k-r), k-r]^d,
/// z in [-m, m]^d, all carved from one realization. Bound: 3^d sqrt(h)(1 - (1 - r/k)^d).
GapReport near_additivity_gap(const ModelSpec& model, int q, std::span<const TimePair> pairs, int k, int r, int m,
                              const Seed& seed);

/// Window n against its largest aligned sub-window (2 m_n + 1)k with
/// (2 m_n + 1)k <= n < (2 m_n + 3)k. Bound: 3^d sqrt(h)(1 - ((2 m_n + 1)k / n)^d).
GapReport regularity_gap(const ModelSpec& model, int q, std::span<const TimePair> pairs, int k, int n,
                         const Seed& seed);

/// Bilinear interpolation on a rectangular (s, t) table, zero outside it.
struct TabulatedFunction {
    std::vector<double> s_axis;
    std::vector<double> t_axis;
    /// values[a * t_axis.size() + b] = f(s_axis[a], t_axis[b])
    std::vector<double> values;

    void check() const;
    double operator()(double s, double t) const;
};

struct IntegralEstimate {
    /// Sum over rectangles of f(upper-right corner) times the rectangle's mass.
    double piecewise = 0;
    /// Sum of f over the finite pairs.
    double exact = 0;
};

IntegralEstimate piecewise_constant_integral(const PersistenceDiagram& diagram, int q, const TabulatedFunction& f,
                                             int l);

}  // namespace cubeph
