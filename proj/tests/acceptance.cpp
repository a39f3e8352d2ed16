// Acceptance suite: one PASS/FAIL line per criterion. Each check recomputes
// its expectation on the test side (brute-force enumeration, union-find
// components, closed-form bounds, direct log-sum-exp and Legendre sums) and
// compares with the library. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cube.hpp"
#include "filtration.hpp"
#include "homology.hpp"
#include "lab.hpp"
#include "models.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "persistence.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace cubeph;

namespace {

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> problems;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (problems.size() < 5) problems.push_back(what);
    }
};

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

std::int64_t choose(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

ElementaryCube cube(std::vector<int> base, std::vector<int> ext) { return ElementaryCube(base, ext); }

// ---- 1

Outcome boundary_examples() {
    Outcome o;
    auto as_map = [](const std::vector<SignedCube>& faces) {
        std::map<ElementaryCube, int> m;
        for (const auto& f : faces) m[f.cube] += f.sign;
        return m;
    };
    const auto vertex = boundary_faces(cube({0, 0}, {0, 0}));
    o.expect(vertex.empty(), "boundary of (0,0) is not 0");

    const auto edge = boundary_faces(cube({0, 0}, {1, 0}));
    const std::map<ElementaryCube, int> edge_want{{cube({1, 0}, {0, 0}), 1}, {cube({0, 0}, {0, 0}), -1}};
    o.expect(edge.size() == 2 && as_map(edge) == edge_want, "boundary of [0,1]x{0} is not (1,0) - (0,0)");

    const auto square = boundary_faces(cube({0, 0}, {1, 1}));
    const std::map<ElementaryCube, int> square_want{{cube({0, 0}, {1, 0}), 1},
                                                    {cube({1, 0}, {0, 1}), 1},
                                                    {cube({0, 1}, {1, 0}), -1},
                                                    {cube({0, 0}, {0, 1}), -1}};
    o.expect(square.size() == 4 && as_map(square) == square_want,
             "boundary of [0,1]^2 is not [0,1]x{0} + {1}x[0,1] - [0,1]x{1} - {0}x[0,1]");
    o.detail = "vertex, edge and square of [0,1]^2";
    return o;
}

// ---- 2

/// Closure of `count` random cubes of [-n,n]^d.
std::vector<ElementaryCube> random_closed(std::mt19937_64& rng, int d, int n, int count) {
    const auto all = oracle::all_cubes(d, n);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::vector<ElementaryCube> chosen;
    for (int i = 0; i < count; ++i) chosen.push_back(all[pick(rng)]);
    return oracle::closure(chosen, d, n);
}

Outcome chain_complex() {
    Outcome o;
    std::int64_t columns = 0;
    for (int d = 2; d <= 4; ++d) {
        const auto parts = run_indexed(100, jobs(), [&](int i) {
            Outcome part;
            std::int64_t cols = 0;
            std::mt19937_64 rng(7000 + 1000 * d + i);
            const int n = 1 + i % 2;
            const auto set = random_closed(rng, d, n, 2 + i % 40);
            std::map<ElementaryCube, bool> present;
            for (const auto& c : set) present[c] = true;
            for (const auto& c : set) {
                if (c.dimension() < 2) continue;
                // integer composition of the signed face lists
                std::map<ElementaryCube, int> acc;
                for (const auto& f : boundary_faces(c)) {
                    part.expect(present.count(f.cube) > 0, "oracle set is not face-closed");
                    for (const auto& g : boundary_faces(f.cube)) acc[g.cube] += f.sign * g.sign;
                }
                for (const auto& [g, v] : acc)
                    part.expect(v == 0, "d^2 != 0 on " + c.to_string() + " at " + g.to_string());
            }
            // the same composition through the matrices the reductions use
            for (int q = 1; q < d; ++q) {
                const auto lower = boundary_matrix<Mersenne31>(set, q);
                const auto upper = boundary_matrix<Mersenne31>(set, q + 1);
                for (std::size_t j = 0; j < upper.matrix.cols(); ++j) {
                    std::map<std::size_t, Mersenne31> acc;
                    for (const auto& e : upper.matrix.column(j))
                        for (const auto& g : lower.matrix.column(e.row)) acc[g.row] += e.value * g.value;
                    for (const auto& [row, v] : acc)
                        part.expect(v == Mersenne31(0), "matrix product nonzero, d=" + std::to_string(d));
                    ++cols;
                }
            }
            return std::make_pair(part, cols);
        });
        for (const auto& [part, cols] : parts) {
            for (const auto& p : part.problems) o.expect(false, p);
            columns += cols;
        }
    }
    o.detail = "100 random face-closed sets per d in {2,3,4}, n <= 2, " + std::to_string(columns) + " columns";
    return o;
}

// ---- 3

Outcome cube_counts() {
    Outcome o;
    int compared = 0;
    for (int d = 1; d <= 4; ++d) {
        const ElementaryCube unit(std::vector<int>(static_cast<std::size_t>(d), 0),
                                  std::vector<int>(static_cast<std::size_t>(d), 1));
        const auto lib_faces = faces_contained(unit);
        for (int q = 0; q <= d; ++q) {
            const std::int64_t want = choose(d, q) * ipow(2, d - q);
            std::int64_t brute = 0;
            for (const auto& c : oracle::all_cubes(d, 1, q)) brute += oracle::contains(unit, c);
            const auto lib = std::count_if(lib_faces.begin(), lib_faces.end(),
                                           [q](const ElementaryCube& c) { return c.dimension() == q; });
            o.expect(brute == want && lib == want, "faces of the unit cube, d=" + std::to_string(d) +
                                                       " q=" + std::to_string(q));
            ++compared;
        }
        for (int n = 0; n <= 3; ++n) {
            const Window w{d, n};
            const CellGrid grid(Box::from_window(w));
            std::vector<std::int64_t> by_dim(static_cast<std::size_t>(d + 1), 0);
            for (std::size_t i = 0; i < grid.size(); ++i) ++by_dim[static_cast<std::size_t>(grid.dimension(i))];
            for (int q = 0; q <= d; ++q) {
                const std::int64_t want = choose(d, q) * ipow(2 * n, q) * ipow(2 * n + 1, d - q);
                const auto brute = static_cast<std::int64_t>(oracle::all_cubes(d, n, q).size());
                const bool ok = brute == want && window_cube_count(w, q) == want &&
                                static_cast<std::int64_t>(enumerate_cubes(w, q).size()) == want &&
                                by_dim[static_cast<std::size_t>(q)] == want;
                o.expect(ok, "window count d=" + std::to_string(d) + " n=" + std::to_string(n) +
                                 " q=" + std::to_string(q));
                ++compared;
            }
        }
    }
    o.detail = std::to_string(compared) + " counts against brute-force enumeration, d <= 4, n <= 3";
    return o;
}

// ---- 4 and 5

constexpr int kCorpus = 200;

struct Member {
    int d = 2, n = 1;
    Filtration y{Window{2, 1}};
    Filtration x{Window{2, 1}};  // x(t) is a subset of y(t)
};

Member corpus_member(int i) {
    Member m;
    m.d = 2 + i % 2;
    m.n = 1 + (i / 2) % 3;
    std::mt19937_64 rng(90000 + i);
    m.y = oracle::random_filtration(rng, m.d, m.n);
    m.x = oracle::random_filtration(rng, m.d, m.n, 0.2);
    for (std::size_t c = 0; c < m.x.grid().size(); ++c) m.x.set_birth_at(c, std::max(m.x.birth_at(c), m.y.birth_at(c)));
    return m;
}

const std::vector<double> kStarts{0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kOffsets{0.0, 0.1, 0.2, 0.4, 1.0};

std::vector<ElementaryCube> cubes_below(const Filtration& f, double t) {
    std::vector<ElementaryCube> out;
    for (std::size_t i = 0; i < f.grid().size(); ++i)
        if (f.birth_at(i) <= t) out.push_back(f.grid().cube(i));
    return out;
}

/// Components of X(t) that contain a vertex of X(s).
std::int64_t persistent_components(const Filtration& f, double s, double t) {
    const auto later = cubes_below(f, t);
    std::map<ElementaryCube, int> id;
    for (const auto& c : later)
        if (c.dimension() == 0) id.emplace(c, static_cast<int>(id.size()));
    std::vector<int> parent(id.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& c : later) {
        if (c.dimension() != 1) continue;
        std::vector<int> lo(c.ambient_dim()), hi(c.ambient_dim()), zero(c.ambient_dim(), 0);
        for (int a = 0; a < c.ambient_dim(); ++a) {
            lo[a] = c.lower(a);
            hi[a] = c.upper(a);
        }
        parent[find(id.at(ElementaryCube(lo, zero)))] = find(id.at(ElementaryCube(hi, zero)));
    }
    std::vector<bool> seen(parent.size(), false);
    std::int64_t count = 0;
    for (const auto& c : cubes_below(f, s)) {
        if (c.dimension() != 0) continue;
        const int r = find(id.at(c));
        if (!seen[r]) ++count;
        seen[r] = true;
    }
    return count;
}

std::int64_t count_dim(const std::vector<ElementaryCube>& set, int q) {
    return std::count_if(set.begin(), set.end(), [q](const ElementaryCube& c) { return c.dimension() == q; });
}

Outcome k_triangle() {
    Outcome o;
    const auto parts = run_indexed(kCorpus, jobs(), [](int i) {
        Outcome part;
        std::int64_t compared = 0;
        const Member m = corpus_member(i);
        const PersistenceDiagram dgm = compute_diagram(m.y);
        for (int q = 0; q < m.d; ++q)
            for (double s : kStarts)
                for (double off : kOffsets) {
                    const double t = s + off;
                    const auto mass = quadrant_mass(dgm, q, s, t);
                    const auto direct = persistent_betti_direct(m.y, q, s, t);
                    part.expect(mass == direct, "member " + std::to_string(i) + " q=" + std::to_string(q) +
                                                    " (s,t)=(" + fmt(s) + "," + fmt(t) + "): diagram " +
                                                    std::to_string(mass) + " vs rank " + std::to_string(direct));
                    if (q == 0)
                        part.expect(mass == persistent_components(m.y, s, t),
                                    "member " + std::to_string(i) + ": quadrant mass differs from components");
                    ++compared;
                }
        return std::make_pair(part, compared);
    });
    std::int64_t compared = 0;
    for (const auto& [part, c] : parts) {
        for (const auto& p : part.problems) o.expect(false, p);
        compared += c;
    }
    o.detail = std::to_string(kCorpus) + " random filtrations, d in {2,3}, n <= 3, " + std::to_string(compared) +
               " (q, s, t) comparisons";
    return o;
}

Outcome inequalities() {
    Outcome o;
    struct Slack {
        std::int64_t trivial = INT64_MAX, difference = INT64_MAX, rectangle = INT64_MAX, total = INT64_MAX;
        std::vector<std::string> problems;
    };
    const auto parts = run_indexed(kCorpus, jobs(), [](int i) {
        Slack sl;
        const Member m = corpus_member(i);
        const PersistenceDiagram dgm = compute_diagram(m.y);
        for (int q = 0; q < m.d; ++q) {
            for (double s : kStarts) {
                const auto ys = cubes_below(m.y, s), xs = cubes_below(m.x, s);
                const auto hs = q == 0 ? persistent_components(m.y, s, s) : betti(ys, q);
                for (double off : kOffsets) {
                    const double t = s + off;
                    const auto by = persistent_betti_direct(m.y, q, s, t);
                    sl.trivial = std::min({sl.trivial, hs - by, count_dim(ys, q) - hs});
                    const auto yt = cubes_below(m.y, t), xt = cubes_below(m.x, t);
                    // x is a subfiltration, so the set differences are count differences
                    const auto bound = (count_dim(ys, q) - count_dim(xs, q)) + (count_dim(yt, q + 1) - count_dim(xt, q + 1));
                    sl.difference = std::min(sl.difference, bound - std::abs(by - persistent_betti_direct(m.x, q, s, t)));
                }
            }
            const std::vector<double> times{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
            for (std::size_t a = 0; a < times.size(); ++a)
                for (std::size_t b = a + 1; b < times.size(); ++b)
                    for (std::size_t c = b; c < times.size(); ++c)
                        for (std::size_t e = c + 1; e < times.size(); ++e) {
                            const double s1 = times[a], s2 = times[b], t1 = times[c], t2 = times[e];
                            const auto mass = persistent_betti_direct(m.y, q, s2, t1) - persistent_betti_direct(m.y, q, s1, t1) -
                                              persistent_betti_direct(m.y, q, s2, t2) + persistent_betti_direct(m.y, q, s1, t2);
                            sl.rectangle = std::min(sl.rectangle, mass);
                            if (mass != rectangle_mass(dgm, q, s1, s2, t1, t2))
                                sl.problems.push_back("member " + std::to_string(i) + ": rectangle mass mismatch");
                        }
            sl.total = std::min(sl.total, window_cube_count(Window{m.d, m.n}, q) -
                                              static_cast<std::int64_t>(dgm.size(q)));
        }
        return sl;
    });
    Slack worst;
    for (const auto& p : parts) {
        worst.trivial = std::min(worst.trivial, p.trivial);
        worst.difference = std::min(worst.difference, p.difference);
        worst.rectangle = std::min(worst.rectangle, p.rectangle);
        worst.total = std::min(worst.total, p.total);
        for (const auto& s : p.problems) o.expect(false, s);
    }
    o.expect(worst.trivial >= 0, "trivial bound violated");
    o.expect(worst.difference >= 0, "difference bound violated");
    o.expect(worst.rectangle >= 0, "negative rectangle mass");
    o.expect(worst.total >= 0, "total mass exceeds the q-cube count");
    o.detail = "worst slack: trivial " + std::to_string(worst.trivial) + ", difference " +
               std::to_string(worst.difference) + ", rectangle " + std::to_string(worst.rectangle) +
               ", total mass " + std::to_string(worst.total);
    return o;
}

// ---- 6

ModelSpec uniform_model(ModelKind kind, int d) {
    ModelSpec m;
    m.kind = kind;
    m.dim = d;
    if (kind == ModelKind::perturbed_lattice) {
        m.perturbation.family = Perturbation::Family::uniform_box;
        m.perturbation.scale = 0.2;
    } else {
        m.marks.assign(static_cast<std::size_t>(d + 1), Distribution::uniform(0, 1));
    }
    return m;
}

Outcome gap_bounds() {
    Outcome o;
    constexpr int d = 2, r = 1;
    const std::vector<TimePair> marked{{0.3, 0.6}, {0.5, 0.5}};
    const std::vector<TimePair> lattice{{1.0, 1.2}, {1.1, 1.1}};
    struct Part {
        int samples = 0;
        double worst = INFINITY;
        std::vector<std::string> problems;
    };
    const auto parts = run_indexed(50, jobs(), [&](int seed) {
        Part p;
        auto check = [&](const GapReport& g, double bound, const std::string& what) {
            ++p.samples;
            p.worst = std::min(p.worst, bound - g.measured);
            if (!(g.measured <= bound) || std::abs(g.bound - bound) > 1e-12 * bound)
                p.problems.push_back(what + ": measured " + fmt(g.measured) + " bound " + fmt(bound));
        };
        for (ModelKind kind : {ModelKind::upper, ModelKind::lower, ModelKind::perturbed_lattice}) {
            const ModelSpec model = uniform_model(kind, d);
            const auto& pairs = kind == ModelKind::perturbed_lattice ? lattice : marked;
            const double h = static_cast<double>(pairs.size());
            const Seed s{20260415, static_cast<std::uint64_t>(seed)};
            const std::string tag = to_string(kind) + " seed " + std::to_string(seed);
            for (int q = 0; q < d; ++q) {
                for (int k : {3, 4}) {
                    const double near = 9 * std::sqrt(h) * (1 - std::pow(1 - static_cast<double>(r) / k, d));
                    for (int m : {1, 2})
                        check(near_additivity_gap(model, q, pairs, k, r, m, s), near, tag + " near k=" + std::to_string(k));
                    for (int n : {7, 9}) {
                        int mn = 0;
                        while ((2 * mn + 3) * k <= n) ++mn;
                        const int inner = (2 * mn + 1) * k;
                        const double bound = 9 * std::sqrt(h) * (1 - std::pow(static_cast<double>(inner) / n, d));
                        const GapReport g = regularity_gap(model, q, pairs, k, n, s);
                        check(g, bound, tag + " regularity k=" + std::to_string(k) + " n=" + std::to_string(n));
                        // recompute the measured gap from rank formulas
                        const Filtration f = sample(model, n, s);
                        const Filtration sub = restrict(f, inner);
                        double sq = 0;
                        for (const auto& pr : pairs) {
                            const auto diff = persistent_betti_direct(f, q, pr.s, pr.t) - persistent_betti_direct(sub, q, pr.s, pr.t);
                            sq += static_cast<double>(diff * diff);
                        }
                        const double measured = std::sqrt(sq) / static_cast<double>(ipow(2 * n, d));
                        if (std::abs(measured - g.measured) > 1e-12)
                            p.problems.push_back(tag + ": regularity gap " + fmt(g.measured) + " recomputed " + fmt(measured));
                    }
                }
            }
        }
        return p;
    });
    int samples = 0;
    double worst = INFINITY;
    for (const auto& p : parts) {
        samples += p.samples;
        worst = std::min(worst, p.worst);
        for (const auto& s : p.problems) o.expect(false, s);
    }
    o.detail = std::to_string(samples) + " gap reports over 50 seeds, upper, lower and perturbed lattice; worst slack " +
               fmt(worst);
    return o;
}

// ---- 7, 8

/// Direct sum form of the empirical log-MGF.
double log_mgf_at(const std::vector<std::vector<std::int64_t>>& counts, double volume, const std::vector<double>& lambda) {
    std::vector<double> e;
    for (const auto& c : counts) {
        double v = 0;
        for (std::size_t a = 0; a < lambda.size(); ++a) v += lambda[a] * static_cast<double>(c[a]);
        e.push_back(v);
    }
    const double top = *std::max_element(e.begin(), e.end());
    double sum = 0;
    for (double v : e) sum += std::exp(v - top);
    return (top + std::log(sum / static_cast<double>(counts.size()))) / volume;
}

std::vector<double> brute_legendre(const Grid& lambda, const std::vector<double>& phi, const Grid& x) {
    std::vector<double> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto xi = x.point(i);
        double best = -INFINITY;
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            const auto l = lambda.point(j);
            double dot = 0;
            for (std::size_t a = 0; a < l.size(); ++a) dot += l[a] * xi[a];
            best = std::max(best, dot - phi[j]);
        }
        out.push_back(best);
    }
    return out;
}

/// Every (a, b, midpoint) index triple of an evenly spaced grid.
std::vector<std::array<std::size_t, 3>> midpoint_triples(const Grid& g) {
    std::vector<std::array<std::size_t, 3>> out;
    const std::size_t h = g.axes.size();
    auto coords = [&](std::size_t i) {
        std::vector<std::size_t> c(h);
        for (std::size_t a = h; a-- > 0;) {
            c[a] = i % g.axes[a].size();
            i /= g.axes[a].size();
        }
        return c;
    };
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const auto ci = coords(i), cj = coords(j);
            std::size_t mid = 0;
            bool ok = true;
            for (std::size_t a = 0; a < h; ++a) {
                if ((ci[a] + cj[a]) % 2) ok = false;
                mid = mid * g.axes[a].size() + (ci[a] + cj[a]) / 2;
            }
            if (ok) out.push_back({i, j, mid});
        }
    return out;
}

Outcome log_mgf_structure() {
    Outcome o;
    const std::vector<TimePair> pairs{{0.3, 0.6}, {0.5, 0.5}};
    const MonteCarlo mc{uniform_model(ModelKind::lower, 2), 200, 31337, jobs()};
    const Grid lambda = Grid::uniform(2, -3, 3, 13);
    const Grid x = Grid::uniform(2, 0, 0.5, 11);
    const auto lambda_triples = midpoint_triples(lambda), x_triples = midpoint_triples(x);
    double worst_phi = INFINITY, worst_rate = INFINITY, min_rate = INFINITY;
    for (int q = 0; q < 2; ++q) {
        const int n = 4;
        const PbEstimate pb = estimate_pb_density(mc, q, pairs, n);
        const GridFunction phi = estimate_log_mgf(mc, q, pairs, lambda, n);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const auto l = lambda.point(i);
            const double want = log_mgf_at(pb.counts, pb.volume, l);
            o.expect(std::abs(phi.values[i] - want) <= 1e-12 * std::max(1.0, std::abs(want)), "log-MGF differs from direct sum");
            if (l[0] == 0 && l[1] == 0) o.expect(phi.values[i] == 0.0, "phi(0) = " + fmt(phi.values[i]));
        }
        for (const auto& [a, b, m] : lambda_triples)
            worst_phi = std::min(worst_phi, 0.5 * (phi.values[a] + phi.values[b]) - phi.values[m]);

        const GridFunction rate = legendre_transform(phi, x);
        const auto brute = brute_legendre(lambda, phi.values, x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            o.expect(std::abs(rate.values[i] - brute[i]) <= 1e-12, "Legendre transform differs from direct max");
            min_rate = std::min(min_rate, rate.values[i]);
        }
        for (const auto& [a, b, m] : x_triples)
            worst_rate = std::min(worst_rate, 0.5 * (rate.values[a] + rate.values[b]) - rate.values[m]);
    }
    o.expect(worst_phi >= -1e-9, "log-MGF midpoint convexity off by " + fmt(-worst_phi));
    o.expect(min_rate >= 0, "negative transform " + fmt(min_rate));
    o.expect(worst_rate >= -1e-12, "transform midpoint convexity off by " + fmt(-worst_rate));
    o.detail = std::to_string(lambda_triples.size()) + " + " + std::to_string(x_triples.size()) +
               " midpoint triples per degree; worst convexity slack phi " + fmt(worst_phi) + ", phi* " +
               fmt(worst_rate) + "; min phi* " + fmt(min_rate);
    return o;
}

Outcome rate_zero() {
    Outcome o;
    const std::vector<TimePair> pairs{{0.5, 0.5}};
    const MonteCarlo mc{uniform_model(ModelKind::lower, 2), 400, 0x5eed0005, jobs()};
    const int n = 8;
    const Grid lambda = Grid::uniform(1, -4, 4, 1601);
    const Grid x = Grid::uniform(1, 0, 0.5, 251);
    const PbEstimate pb = estimate_pb_density(mc, 0, pairs, n);
    double mean = 0;
    for (const auto& v : pb.values) mean += v[0];
    mean /= static_cast<double>(pb.values.size());
    std::vector<double> phi;
    for (std::size_t j = 0; j < lambda.size(); ++j) phi.push_back(log_mgf_at(pb.counts, pb.volume, lambda.point(j)));
    const auto rate = brute_legendre(lambda, phi, x);
    const auto lib = legendre_transform(estimate_log_mgf(mc, 0, pairs, lambda, n), x);
    for (std::size_t i = 0; i < rate.size(); ++i)
        o.expect(std::abs(rate[i] - lib.values[i]) <= 1e-9, "library transform differs at x=" + fmt(x.axes[0][i]));
    const auto it = std::min_element(rate.begin(), rate.end());
    const double at = x.axes[0][static_cast<std::size_t>(it - rate.begin())];
    const double cell = x.axes[0][1] - x.axes[0][0];
    o.expect(std::abs(at - mean) <= cell * (1 + 1e-9), "argmin " + fmt(at) + " is more than one cell from the mean " + fmt(mean));
    o.expect(*it <= 0.02, "minimum " + fmt(*it) + " exceeds 0.02");
    o.detail = "lower model d=2 q=0 n=8, 400 trials: mean " + fmt(mean) + ", argmin " + fmt(at) + ", min " + fmt(*it) +
               ", cell " + fmt(cell);
    return o;
}

// ---- 9

Outcome lln_drift() {
    Outcome o;
    const ModelSpec model = uniform_model(ModelKind::lower, 2);
    const std::vector<int> ladder{4, 8, 12};
    const std::vector<TimePair> pairs{{0.5, 0.5}};
    const int trials = 30;
    std::vector<double> means, stds;
    for (int n : ladder) {
        const MonteCarlo mc{model, trials, kDriftSeed, jobs()};
        const PbEstimate lib = estimate_pb_density(mc, 0, pairs, n);
        const double volume = static_cast<double>(ipow(2 * n, 2));
        std::vector<double> v;
        for (int k = 0; k < trials; ++k) {
            // beta_0(t, t) is the number of components of X(t)
            const Filtration f = sample(model, n, Seed{kDriftSeed, static_cast<std::uint64_t>(k)});
            const auto comps = persistent_components(f, 0.5, 0.5);
            o.expect(comps == lib.counts[static_cast<std::size_t>(k)][0], "library count differs from components");
            v.push_back(static_cast<double>(comps) / volume);
        }
        double mean = 0, ss = 0;
        for (double x : v) mean += x;
        mean /= trials;
        for (double x : v) ss += (x - mean) * (x - mean);
        means.push_back(mean);
        stds.push_back(std::sqrt(ss / (trials - 1)));
    }
    o.expect(stds[0] > stds[1] && stds[1] > stds[2], "std not decreasing: " + fmt(stds[0]) + ", " + fmt(stds[1]) + ", " + fmt(stds[2]));
    const double drift = std::abs(means[2] - means[1]);
    o.expect(drift <= 0.05 * means[2], "|mean12 - mean8| = " + fmt(drift) + " > " + fmt(0.05 * means[2]));
    for (std::size_t i = 0; i < ladder.size(); ++i)
        o.detail += (i ? "; " : "") + std::string("n=") + std::to_string(ladder[i]) + " mean " + fmt(means[i]) +
                    " std " + fmt(stds[i]);
    o.detail += "; drift " + fmt(drift) + " vs " + fmt(0.05 * means[2]) + " (seed " + std::to_string(kDriftSeed) + ")";
    return o;
}

// ---- 10

std::map<std::string, std::string> read_dir(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[e.path().filename().string()] = s.str();
    }
    return out;
}

Outcome determinism(const fs::path& work) {
    Outcome o;
    const std::string config = std::string(CUBEPH_FIXTURES) + "/estimate_small.json";
    int files = 0;
    for (const char* which : {"pb", "diagram", "mgf", "rate"}) {
        std::map<std::string, std::string> runs[2];
        for (int i = 0; i < 2; ++i) {
            const int j = i ? 4 : 1;
            const fs::path dir = work / (std::string(which) + "_jobs" + std::to_string(j));
            fs::remove_all(dir);
            const std::string cmd = std::string("\"") + CUBEPH_CLI + "\" estimate " + which + " --config \"" + config +
                                    "\" --out \"" + dir.string() + "\" --jobs " + std::to_string(j) + " > /dev/null";
            const int rc = std::system(cmd.c_str());
            o.expect(rc == 0, std::string("estimate ") + which + " --jobs " + std::to_string(j) + " failed");
            if (rc == 0) runs[i] = read_dir(dir);
        }
        o.expect(!runs[0].empty() && runs[0] == runs[1], std::string("estimate ") + which + " output differs");
        files += static_cast<int>(runs[0].size());
    }
    o.detail = "cubeph estimate pb, diagram, mgf and rate with --jobs 1 and 4: " + std::to_string(files) +
               " files byte-identical";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cubeph_acceptance";
    fs::create_directories(work);

    const std::vector<Criterion> criteria{
        {1, "boundary examples", 1, boundary_examples},
        {2, "chain complex law", 10, chain_complex},
        {3, "cube counting", 5, cube_counts},
        {4, "k-triangle identity", 120, k_triangle},
        {5, "persistent Betti inequalities", 60, inequalities},
        {6, "gap bounds", 120, gap_bounds},
        {7, "log-MGF structure", 30, log_mgf_structure},
        {8, "rate function zero", 120, rate_zero},
        {9, "window-ladder drift", 180, lln_drift},
        {10, "determinism across workers", 60, [&] { return determinism(work); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.expect(seconds <= c.budget_seconds, "over the time budget");
        if (!o.ok) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", seconds, c.budget_seconds);
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
                  << timing << "]\n";
        for (const auto& p : o.problems) std::cout << "    " << p << "\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
