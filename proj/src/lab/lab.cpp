#include "lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace cubeph {

namespace {

void check_pairs(std::span<const TimePair> pairs) {
    for (const auto& p : pairs)
        if (!(p.s >= 0 && p.s <= p.t && p.t < kNever))
            throw std::invalid_argument("time pairs need 0 <= s <= t < inf");
}

void check_degree(const ModelSpec& model, int q) {
    if (q < 0 || q >= model.dim) throw std::invalid_argument("degree q must satisfy 0 <= q < d");
}

void check_run(const MonteCarlo& mc, int n) {
    mc.model.check();
    if (mc.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (n < 1) throw std::invalid_argument("window size n must be >= 1");
}

double window_volume(const ModelSpec& model, int n) { return Window{model.dim, n}.volume(); }

double norm_of_difference(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto diff = static_cast<double>(a[i] - b[i]);
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<std::int64_t> persistent_betti_tuple(const Filtration& f, int q, std::span<const TimePair> pairs) {
    const auto diagram = compute_diagram(f);
    std::vector<std::int64_t> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(quadrant_mass(diagram, q, p.s, p.t));
    return out;
}

PbEstimate estimate_pb_density(const MonteCarlo& mc, int q, std::span<const TimePair> pairs, int n) {
    check_run(mc, n);
    check_degree(mc.model, q);
    check_pairs(pairs);

    PbEstimate est;
    est.q = q;
    est.n = n;
    est.volume = window_volume(mc.model, n);
    est.pairs.assign(pairs.begin(), pairs.end());
    est.counts = run_indexed(mc.trials, mc.jobs, [&](int trial) {
        const auto f = sample(mc.model, n, Seed{mc.seed, static_cast<std::uint64_t>(trial)});
        return persistent_betti_tuple(f, q, pairs);
    });

    const std::size_t h = pairs.size();
    est.mean.assign(h, 0.0);
    est.std.assign(h, 0.0);
    for (const auto& row : est.counts) {
        std::vector<double> v(h);
        for (std::size_t i = 0; i < h; ++i) v[i] = static_cast<double>(row[i]) / est.volume;
        est.values.push_back(v);
    }
    const auto trials = static_cast<double>(mc.trials);
    for (std::size_t i = 0; i < h; ++i) {
        double sum = 0;
        for (const auto& row : est.values) sum += row[i];
        est.mean[i] = sum / trials;
        if (mc.trials > 1) {
            double ss = 0;
            for (const auto& row : est.values) ss += (row[i] - est.mean[i]) * (row[i] - est.mean[i]);
            est.std[i] = std::sqrt(ss / (trials - 1));
        }
    }
    return est;
}

MeanDiagram estimate_mean_diagram(const MonteCarlo& mc, int q, int n, int l, std::span<const TimePair> pairs) {
    check_run(mc, n);
    check_degree(mc.model, q);
    check_pairs(pairs);
    const double volume = window_volume(mc.model, n);

    struct TrialResult {
        Histogram hist{1};
        std::vector<double> quadrants;
    };
    const auto results = run_indexed(mc.trials, mc.jobs, [&](int trial) {
        const auto f = sample(mc.model, n, Seed{mc.seed, static_cast<std::uint64_t>(trial)});
        const auto diagram = compute_diagram(f);
        TrialResult r{histogram(diagram, q, l), {}};
        for (const auto& p : pairs) r.quadrants.push_back(static_cast<double>(quadrant_mass(diagram, q, p.s, p.t)) / volume);
        return r;
    });

    MeanDiagram out{q, n, volume, mc.trials, Histogram(l), Histogram(l), {pairs.begin(), pairs.end()}, {}};
    for (const auto& r : results) {
        out.total.merge(r.hist);
        out.quadrant_values.push_back(r.quadrants);
    }
    out.mean = out.total;
    out.mean.scale(1.0 / (static_cast<double>(mc.trials) * volume));
    return out;
}

Grid Grid::uniform(int h, double lo, double hi, int count) {
    if (h < 1 || count < 1) throw std::invalid_argument("grid needs h >= 1 and count >= 1");
    std::vector<double> axis(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        axis[static_cast<std::size_t>(k)] = count == 1 ? lo : lo + (hi - lo) * (static_cast<double>(k) / (count - 1));
    Grid g;
    g.axes.assign(static_cast<std::size_t>(h), axis);
    g.check();
    return g;
}

void Grid::check() const {
    if (axes.empty()) throw std::invalid_argument("grid has no axes");
    for (const auto& axis : axes) {
        if (axis.empty()) throw std::invalid_argument("grid axis is empty");
        for (std::size_t k = 0; k < axis.size(); ++k) {
            if (!std::isfinite(axis[k])) throw std::invalid_argument("grid values must be finite");
            if (k > 0 && !(axis[k] > axis[k - 1])) throw std::invalid_argument("grid axes must be strictly increasing");
        }
    }
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.size();
    return axes.empty() ? 0 : n;
}

std::vector<double> Grid::point(std::size_t index) const {
    std::vector<double> p(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        p[a] = axes[a][index % axes[a].size()];
        index /= axes[a].size();
    }
    return p;
}

std::vector<double> log_mgf(const std::vector<std::vector<std::int64_t>>& counts, double volume, const Grid& grid) {
    grid.check();
    if (counts.empty()) throw std::invalid_argument("log-MGF needs at least one sample");
    for (const auto& row : counts)
        if (static_cast<int>(row.size()) != grid.dim())
            throw std::invalid_argument("grid dimension differs from the number of time pairs");

    const double log_trials = std::log(static_cast<double>(counts.size()));
    std::vector<double> out(grid.size());
    std::vector<double> exponent(counts.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto lambda = grid.point(g);
        double top = -kNever;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            double e = 0;
            for (std::size_t i = 0; i < lambda.size(); ++i) e += lambda[i] * static_cast<double>(counts[k][i]);
            exponent[k] = e;
            top = std::max(top, e);
        }
        double sum = 0;
        for (double e : exponent) sum += std::exp(e - top);
        out[g] = (top + std::log(sum) - log_trials) / volume;
    }
    return out;
}

GridFunction estimate_log_mgf(const MonteCarlo& mc, int q, std::span<const TimePair> pairs, const Grid& lambda_grid,
                              int n) {
    lambda_grid.check();
    if (mc.trials < 2) throw std::invalid_argument("log-MGF estimation needs trials >= 2");
    if (static_cast<int>(pairs.size()) != lambda_grid.dim())
        throw std::invalid_argument("lambda grid dimension must equal the number of time pairs");
    const auto est = estimate_pb_density(mc, q, pairs, n);
    GridFunction phi;
    phi.grid = lambda_grid;
    phi.values = log_mgf(est.counts, est.volume, lambda_grid);
    phi.n = n;
    phi.trials = mc.trials;
    phi.model = to_string(mc.model.kind);
    return phi;
}

GridFunction legendre_transform(const GridFunction& phi, const Grid& x_grid) {
    phi.grid.check();
    x_grid.check();
    if (phi.grid.dim() != x_grid.dim()) throw std::invalid_argument("x grid and lambda grid dimensions differ");
    if (phi.values.size() != phi.grid.size()) throw std::invalid_argument("function values do not match its grid");
    for (double v : phi.values)
        if (!std::isfinite(v)) throw std::invalid_argument("function must be finite on its grid");

    std::vector<std::vector<double>> lambdas(phi.grid.size());
    for (std::size_t g = 0; g < lambdas.size(); ++g) lambdas[g] = phi.grid.point(g);

    GridFunction out;
    out.grid = x_grid;
    out.n = phi.n;
    out.trials = phi.trials;
    out.model = phi.model;
    out.values.resize(x_grid.size());
    for (std::size_t k = 0; k < x_grid.size(); ++k) {
        const auto x = x_grid.point(k);
        double best = -kNever;
        for (std::size_t g = 0; g < lambdas.size(); ++g) {
            double v = -phi.values[g];
            for (std::size_t i = 0; i < x.size(); ++i) v += lambdas[g][i] * x[i];
            best = std::max(best, v);
        }
        out.values[k] = best;
    }
    return out;
}

std::vector<PbEstimate> lln_sweep(const MonteCarlo& mc, int q, std::span<const TimePair> pairs,
                                  std::span<const int> n_list) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("window sizes must be strictly increasing");
    std::vector<PbEstimate> out;
    for (int n : n_list) out.push_back(estimate_pb_density(mc, q, pairs, n));
    return out;
}

GapReport near_additivity_gap(const ModelSpec& model, int q, std::span<const TimePair> pairs, int k, int r, int m,
                              const Seed& seed) {
    model.check();
    check_degree(model, q);
    check_pairs(pairs);
    if (pairs.empty()) throw std::invalid_argument("need at least one time pair");
    if (!(r >= 0 && k > r)) throw std::invalid_argument("near additivity needs k > r >= 0");
    if (m < 0) throw std::invalid_argument("near additivity needs m >= 0");
    // a single block has nothing to be independent of
    if (m > 0 && 2 * r <= model.dependence_range()) throw std::invalid_argument("blocks not independent: need 2r > R");

    const int d = model.dim;
    const int big_n = (2 * m + 1) * k;
    const auto big = sample(model, big_n, seed);
    const auto whole = persistent_betti_tuple(big, q, pairs);

    std::vector<std::int64_t> blocks(pairs.size(), 0);
    std::vector<int> z(static_cast<std::size_t>(d), -m);
    while (true) {
        const auto part = persistent_betti_tuple(big.restricted(Box::block(d, k - r, r, z)), q, pairs);
        for (std::size_t i = 0; i < part.size(); ++i) blocks[i] += part[i];
        int a = d - 1;
        while (a >= 0 && z[static_cast<std::size_t>(a)] == m) z[static_cast<std::size_t>(a--)] = -m;
        if (a < 0) break;
        ++z[static_cast<std::size_t>(a)];
    }

    GapReport rep;
    rep.kind = "near_additivity";
    rep.k = k;
    rep.r = r;
    rep.m = m;
    rep.n = big_n;
    rep.h = static_cast<int>(pairs.size());
    rep.measured = norm_of_difference(whole, blocks) / window_volume(model, big_n);
    rep.bound = std::pow(3.0, d) * std::sqrt(static_cast<double>(rep.h)) *
                (1 - std::pow(1 - static_cast<double>(r) / k, d));
    rep.pass = rep.measured <= rep.bound;
    return rep;
}

GapReport regularity_gap(const ModelSpec& model, int q, std::span<const TimePair> pairs, int k, int n,
                         const Seed& seed) {
    model.check();
    check_degree(model, q);
    check_pairs(pairs);
    if (pairs.empty()) throw std::invalid_argument("need at least one time pair");
    if (!(k >= 1 && k <= n)) throw std::invalid_argument("regularity needs 1 <= k <= n");

    const int m = (n / k - 1) / 2;
    const int sub_n = (2 * m + 1) * k;
    const auto f = sample(model, n, seed);
    const auto whole = persistent_betti_tuple(f, q, pairs);
    const auto inner = persistent_betti_tuple(restrict(f, sub_n), q, pairs);

    const int d = model.dim;
    GapReport rep;
    rep.kind = "regularity";
    rep.k = k;
    rep.m = m;
    rep.n = n;
    rep.h = static_cast<int>(pairs.size());
    rep.measured = norm_of_difference(whole, inner) / window_volume(model, n);
    rep.bound = std::pow(3.0, d) * std::sqrt(static_cast<double>(rep.h)) *
                (1 - std::pow(static_cast<double>(sub_n) / n, d));
    rep.pass = rep.measured <= rep.bound;
    return rep;
}

void TabulatedFunction::check() const {
    if (s_axis.size() < 2 || t_axis.size() < 2) throw std::invalid_argument("table needs >= 2 points per axis");
    if (values.size() != s_axis.size() * t_axis.size()) throw std::invalid_argument("table size mismatch");
    for (const auto* axis : {&s_axis, &t_axis})
        for (std::size_t k = 1; k < axis->size(); ++k)
            if (!((*axis)[k] > (*axis)[k - 1])) throw std::invalid_argument("table axes must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("table values must be finite");
}

double TabulatedFunction::operator()(double s, double t) const {
    if (s < s_axis.front() || s > s_axis.back() || t < t_axis.front() || t > t_axis.back()) return 0.0;
    auto cell = [](const std::vector<double>& axis, double x) {
        const auto it = std::upper_bound(axis.begin(), axis.end(), x);
        const auto hi = std::min<std::size_t>(static_cast<std::size_t>(it - axis.begin()), axis.size() - 1);
        return hi - 1;
    };
    const std::size_t a = cell(s_axis, s), b = cell(t_axis, t);
    const double u = (s - s_axis[a]) / (s_axis[a + 1] - s_axis[a]);
    const double v = (t - t_axis[b]) / (t_axis[b + 1] - t_axis[b]);
    const std::size_t w = t_axis.size();
    const double f00 = values[a * w + b], f01 = values[a * w + b + 1];
    const double f10 = values[(a + 1) * w + b], f11 = values[(a + 1) * w + b + 1];
    return (1 - u) * ((1 - v) * f00 + v * f01) + u * ((1 - v) * f10 + v * f11);
}

IntegralEstimate piecewise_constant_integral(const PersistenceDiagram& diagram, int q, const TabulatedFunction& f,
                                             int l) {
    f.check();
    const Histogram bins(l);
    IntegralEstimate out;
    for (const auto& p : diagram.pairs(q)) {
        if (!std::isfinite(p.death)) continue;
        out.exact += f(p.birth, p.death);
        if (const auto key = bins.locate(p.birth, p.death)) {
            const auto rect = bins.rectangle(key->first, key->second);
            out.piecewise += f(rect.s_hi, rect.t_hi);
        }
    }
    return out;
}

}  // namespace cubeph
