#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "formats.hpp"
#include "homology.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace cubeph {

namespace {

constexpr std::uint64_t kCorpusSeed = 0x5eed0001;
constexpr std::uint64_t kChainSeed = 0x5eed0002;
constexpr std::uint64_t kGapSeed = 0x5eed0003;
constexpr std::uint64_t kMgfSeed = 0x5eed0004;
constexpr std::uint64_t kRateSeed = 0x5eed0005;
constexpr std::uint64_t kDeterminismSeed = 0x5eed0006;

struct Sizes {
    int chain_sets;  // per ambient dimension
    int corpus;
    int gap_seeds;
    int mgf_trials;
    int determinism_trials;
};

Sizes sizes(Scale s) {
    switch (s) {
        case Scale::smoke: return {10, 20, 5, 60, 8};
        case Scale::standard: return {100, 200, 50, 200, 24};
        case Scale::deep: return {300, 600, 150, 800, 64};
    }
    return {};
}

/// Running count and smallest slack of a family of comparisons.
struct Tally {
    std::int64_t count = 0;
    double worst = std::numeric_limits<double>::infinity();

    void slack(double s) {
        ++count;
        worst = std::min(worst, s);
    }
    void equal(double a, double b) { slack(-std::abs(a - b)); }
    void merge(const Tally& o) {
        count += o.count;
        worst = std::min(worst, o.worst);
    }
};

CheckResult finish(std::string name, const Tally& t, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.count = t.count;
    r.worst_margin = t.count ? t.worst + 0.0 : 0.0;  // no -0 in reports
    r.passed = t.count > 0 && r.worst_margin >= 0;
    r.detail = std::move(detail);
    return r;
}

Distribution tenths_law() {
    std::vector<double> values, cdf;
    for (int k = 1; k <= 10; ++k) {
        values.push_back(k / 10.0);
        cdf.push_back(k / 10.0);
    }
    Distribution law = Distribution::empirical(values, cdf);
    law.inf_mass = 0.05;
    return law;
}

/// Upper and lower filtrations with births on the tenths grid plus a few
/// never-born cubes, so ties are everywhere.
Filtration corpus_filtration(int d, int n, int variant, const Seed& seed) {
    ModelSpec m;
    m.kind = variant % 2 ? ModelKind::upper : ModelKind::lower;
    m.dim = d;
    m.marks.assign(static_cast<std::size_t>(d + 1), tenths_law());
    return sample(m, n, seed);
}

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

std::int64_t count_dim(const std::vector<ElementaryCube>& set, int q) {
    return std::count_if(set.begin(), set.end(), [q](const ElementaryCube& c) { return c.dimension() == q; });
}

// ---- 1

CheckResult boundary_examples() {
    Tally t;
    auto cube = [](std::vector<int> base, std::vector<int> ext) { return ElementaryCube(base, ext); };
    auto same = [&](const std::vector<SignedCube>& got, std::map<ElementaryCube, int> want) {
        std::map<ElementaryCube, int> have;
        for (const auto& f : got) have[f.cube] += f.sign;
        t.slack(have == want ? 0.0 : -1.0);
    };
    same(boundary_faces(cube({0, 0}, {0, 0})), {});
    same(boundary_faces(cube({0, 0}, {1, 0})), {{cube({1, 0}, {0, 0}), 1}, {cube({0, 0}, {0, 0}), -1}});
    same(boundary_faces(cube({0, 0}, {1, 1})), {{cube({0, 0}, {1, 0}), 1},
                                                {cube({1, 0}, {0, 1}), 1},
                                                {cube({0, 1}, {1, 0}), -1},
                                                {cube({0, 0}, {0, 1}), -1}});
    return finish("boundary_examples", t, "vertex, edge and square of [0,1]^2 with signs");
}

// ---- 2

CheckResult chain_complex(const Sizes& z, int jobs) {
    Tally total;
    for (int d = 2; d <= 4; ++d) {
        const auto parts = run_indexed(z.chain_sets, jobs, [&](int i) {
            Tally t;
            const int n = 1 + i % 2;
            const Filtration f = corpus_filtration(d, n, i, Seed{kChainSeed + static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(i)});
            const auto set = sublevel(f, 0.1 * (1 + i % 10));
            for (int q = 1; q < d; ++q) {
                const auto lower = boundary_matrix<Mersenne31>(set, q);
                const auto upper = boundary_matrix<Mersenne31>(set, q + 1);
                for (std::size_t j = 0; j < upper.matrix.cols(); ++j) {
                    SparseMatrix<Mersenne31>::Column acc;
                    for (const auto& e : upper.matrix.column(j))
                        add_scaled<Mersenne31>(acc, lower.matrix.column(e.row), e.value);
                    t.slack(-static_cast<double>(acc.size()));
                }
            }
            return t;
        });
        for (const auto& t : parts) total.merge(t);
    }
    return finish("chain_complex", total, "composed boundary columns on sublevel sets, d = 2, 3, 4, n <= 2");
}

// ---- 3

CheckResult cube_counts() {
    Tally t;
    for (int d = 1; d <= 4; ++d) {
        std::vector<int> zero(static_cast<std::size_t>(d), 0), ones(static_cast<std::size_t>(d), 1);
        const auto faces = faces_contained(ElementaryCube(zero, ones));
        for (int q = 0; q <= d; ++q)
            t.equal(static_cast<double>(count_dim(faces, q)),
                    static_cast<double>(binomial(d, q) * (std::int64_t{1} << (d - q))));
        for (int n = 0; n <= 3; ++n) {
            const Window w{d, n};
            const CellGrid grid(Box::from_window(w));
            std::vector<std::int64_t> tally(static_cast<std::size_t>(d + 1), 0);
            for (std::size_t i = 0; i < grid.size(); ++i) ++tally[static_cast<std::size_t>(grid.dimension(i))];
            for (int q = 0; q <= d; ++q) {
                const auto expect = static_cast<double>(window_cube_count(w, q));
                t.equal(static_cast<double>(tally[static_cast<std::size_t>(q)]), expect);
                t.equal(static_cast<double>(enumerate_cubes(w, q).size()), expect);
            }
        }
    }
    return finish("cube_counts", t, "faces of a d-cube and cubes of a window, d <= 4, n <= 3");
}

// ---- 4 and 5

struct CorpusTallies {
    Tally triangle;
    Tally trivial;
    Tally difference;
    Tally rectangle;
    Tally total_mass;
};

CorpusTallies corpus_member(int i) {
    CorpusTallies out;
    const int d = 2 + i % 2;
    const int n = 1 + (i / 2) % 3;
    const auto u = static_cast<std::uint64_t>(i);
    const Filtration y = corpus_filtration(d, n, i, Seed{kCorpusSeed, u});
    // births of x are the larger of two samples, so X(t) lies inside Y(t)
    Filtration x = corpus_filtration(d, n, i + 1, Seed{kCorpusSeed + 1, u});
    for (std::size_t c = 0; c < x.grid().size(); ++c) x.set_birth_at(c, std::max(x.birth_at(c), y.birth_at(c)));

    const PersistenceDiagram dgm = compute_diagram(y);
    const std::vector<int> starts{1, 3, 5, 7, 9}, offsets{0, 1, 2, 4, 10};

    for (int q = 0; q < d; ++q) {
        for (int is : starts) {
            const double s = is / 10.0;
            const auto ys = sublevel(y, s), xs = sublevel(x, s);
            const auto hs = betti(ys, q);
            const auto ks = count_dim(ys, q);
            for (int off : offsets) {
                const double t = (is + off) / 10.0;
                const auto direct = persistent_betti_direct(y, q, s, t);
                out.triangle.equal(static_cast<double>(quadrant_mass(dgm, q, s, t)), static_cast<double>(direct));
                out.trivial.slack(static_cast<double>(std::min(hs - direct, ks - hs)));

                const auto yt = sublevel(y, t), xt = sublevel(x, t);
                const auto bound = (ks - count_dim(xs, q)) + (count_dim(yt, q + 1) - count_dim(xt, q + 1));
                const auto diff = std::abs(direct - persistent_betti_direct(x, q, s, t));
                out.difference.slack(static_cast<double>(bound - diff));
            }
        }

        const std::vector<double> times{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
        std::map<std::pair<std::size_t, std::size_t>, std::int64_t> beta;
        for (std::size_t a = 0; a < times.size(); ++a)
            for (std::size_t b = a; b < times.size(); ++b) beta[{a, b}] = persistent_betti_direct(y, q, times[a], times[b]);
        for (std::size_t s1 = 0; s1 < times.size(); ++s1)
            for (std::size_t s2 = s1 + 1; s2 < times.size(); ++s2)
                for (std::size_t t1 = s2; t1 < times.size(); ++t1)
                    for (std::size_t t2 = t1 + 1; t2 < times.size(); ++t2) {
                        const auto mass = beta[{s2, t1}] - beta[{s1, t1}] - beta[{s2, t2}] + beta[{s1, t2}];
                        out.rectangle.slack(static_cast<double>(mass));
                        out.rectangle.equal(static_cast<double>(mass),
                                            static_cast<double>(rectangle_mass(dgm, q, times[s1], times[s2],
                                                                               times[t1], times[t2])));
                    }

        out.total_mass.slack(static_cast<double>(window_cube_count(Window{d, n}, q)) -
                             static_cast<double>(dgm.size(q)));
    }
    return out;
}

// ---- 6

std::vector<GapReport> gap_runs(int seed) {
    std::vector<GapReport> out;
    const std::vector<TimePair> marked{{0.3, 0.6}, {0.5, 0.5}};
    const std::vector<TimePair> lattice{{1.0, 1.2}, {1.1, 1.1}};
    for (ModelKind kind : {ModelKind::upper, ModelKind::lower, ModelKind::perturbed_lattice}) {
        const ModelSpec model = uniform_model(kind, 2);
        const auto& pairs = kind == ModelKind::perturbed_lattice ? lattice : marked;
        const Seed s{kGapSeed, static_cast<std::uint64_t>(seed)};
        for (int q = 0; q < 2; ++q) {
            for (int k : {3, 4})
                for (int m : {1, 2}) out.push_back(near_additivity_gap(model, q, pairs, k, 1, m, s));
            for (int k : {3, 4})
                for (int n : {7, 9}) out.push_back(regularity_gap(model, q, pairs, k, n, s));
        }
    }
    return out;
}

// ---- 7

/// Calls fn(a, b, mid) for every pair of grid points whose midpoint is a grid point.
void for_each_midpoint_triple(const Grid& grid, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const int h = grid.dim();
    std::vector<std::size_t> shape(static_cast<std::size_t>(h));
    for (int a = 0; a < h; ++a) shape[static_cast<std::size_t>(a)] = grid.axes[static_cast<std::size_t>(a)].size();
    auto index = [&](const std::vector<long>& c) {
        std::size_t i = 0;
        for (int a = 0; a < h; ++a) i = i * shape[static_cast<std::size_t>(a)] + static_cast<std::size_t>(c[static_cast<std::size_t>(a)]);
        return i;
    };
    auto coords = [&](std::size_t i) {
        std::vector<long> c(static_cast<std::size_t>(h));
        for (int a = h; a-- > 0;) {
            c[static_cast<std::size_t>(a)] = static_cast<long>(i % shape[static_cast<std::size_t>(a)]);
            i /= shape[static_cast<std::size_t>(a)];
        }
        return c;
    };
    // midpoints in index space are midpoints in value space only on evenly spaced axes
    std::vector<bool> even(static_cast<std::size_t>(h), true);
    for (int a = 0; a < h; ++a) {
        const auto& ax = grid.axes[static_cast<std::size_t>(a)];
        for (std::size_t k = 2; k < ax.size(); ++k)
            if (std::abs((ax[k] - ax[k - 1]) - (ax[1] - ax[0])) > 1e-12 * (ax.back() - ax.front())) even[static_cast<std::size_t>(a)] = false;
    }
    for (std::size_t ia = 0; ia < grid.size(); ++ia) {
        const auto ca = coords(ia);
        for (std::size_t ib = ia + 1; ib < grid.size(); ++ib) {
            const auto cb = coords(ib);
            std::vector<long> mid(static_cast<std::size_t>(h));
            bool ok = true;
            for (int a = 0; a < h && ok; ++a) {
                const auto sa = static_cast<std::size_t>(a);
                const long sum = ca[sa] + cb[sa];
                if (sum % 2 || (!even[sa] && ca[sa] != cb[sa])) ok = false;
                mid[sa] = sum / 2;
            }
            if (ok) fn(ia, ib, index(mid));
        }
    }
}

CheckResult log_mgf_structure(const Sizes& z, int jobs) {
    Tally t;
    const std::vector<TimePair> pairs{{0.3, 0.6}, {0.5, 0.5}};
    const MonteCarlo mc{uniform_model(ModelKind::lower, 2), z.mgf_trials, kMgfSeed, jobs};
    const Grid lambda = Grid::uniform(2, -3, 3, 13);
    const Grid x = Grid::uniform(2, 0, 0.5, 11);
    for (int q = 0; q < 2; ++q) {
        const GridFunction phi = estimate_log_mgf(mc, q, pairs, lambda, 4);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const auto p = lambda.point(i);
            if (p[0] == 0 && p[1] == 0) t.equal(phi.values[i], 0.0);
        }
        for_each_midpoint_triple(lambda, [&](std::size_t a, std::size_t b, std::size_t m) {
            t.slack(1e-9 - (phi.values[m] - 0.5 * (phi.values[a] + phi.values[b])));
        });
        const GridFunction rate = legendre_transform(phi, x);
        for (double v : rate.values) t.slack(v);
        for_each_midpoint_triple(x, [&](std::size_t a, std::size_t b, std::size_t m) {
            t.slack(1e-12 - (rate.values[m] - 0.5 * (rate.values[a] + rate.values[b])));
        });
    }
    return finish("log_mgf_structure", t, "phi(0) = 0, midpoint convexity, nonnegative convex transform");
}

// ---- 8

CheckResult rate_zero(int jobs, std::string& detail) {
    Tally t;
    const std::vector<TimePair> pairs{{0.5, 0.5}};
    const MonteCarlo mc{uniform_model(ModelKind::lower, 2), 400, kRateSeed, jobs};
    const int n = 8;
    const Grid lambda = Grid::uniform(1, -4, 4, 1601);
    const Grid x = Grid::uniform(1, 0, 0.5, 251);
    const double cell = x.axes[0][1] - x.axes[0][0];
    const auto pb = estimate_pb_density(mc, 0, pairs, n);
    const auto rate = legendre_transform(estimate_log_mgf(mc, 0, pairs, lambda, n), x);
    const auto it = std::min_element(rate.values.begin(), rate.values.end());
    const double at = x.axes[0][static_cast<std::size_t>(it - rate.values.begin())];
    t.slack(0.02 - *it);
    t.slack(cell * (1 + 1e-9) - std::abs(at - pb.mean[0]));
    detail = "mean " + format_double(pb.mean[0]) + ", argmin " + format_double(at) + ", min " + format_double(*it);
    return finish("rate_zero", t);
}

// ---- 9

CheckResult lln_drift(int jobs, std::string& detail) {
    Tally t;
    const std::vector<TimePair> pairs{{0.5, 0.5}};
    const MonteCarlo mc{uniform_model(ModelKind::lower, 2), 30, kDriftSeed, jobs};
    const std::vector<int> ladder{4, 8, 12};
    const auto sweep = lln_sweep(mc, 0, pairs, ladder);
    for (std::size_t i = 1; i < sweep.size(); ++i) t.slack(sweep[i - 1].std[0] - sweep[i].std[0]);
    const double m8 = sweep[1].mean[0], m12 = sweep[2].mean[0];
    t.slack(0.05 * m12 - std::abs(m12 - m8));
    for (std::size_t i = 0; i < sweep.size(); ++i)
        detail += (i ? "; " : "") + std::string("n=") + std::to_string(ladder[i]) + " mean " +
                  format_double(sweep[i].mean[0]) + " std " + format_double(sweep[i].std[0]);
    return finish("lln_drift", t);
}

// ---- 10

CheckResult determinism(const Sizes& z) {
    Tally t;
    ExperimentConfig c;
    c.model = uniform_model(ModelKind::lower, 2);
    c.q_list = {0, 1};
    c.n_list = {3, 5};
    c.trials = z.determinism_trials;
    c.seed = kDeterminismSeed;
    c.pairs = {{0.3, 0.6}, {0.5, 0.5}};
    c.lambda_grid = Grid::uniform(2, -2, 2, 5);
    c.x_grid = Grid::uniform(2, 0, 0.5, 6);
    for (const char* which : {"pb", "diagram", "rate"}) {
        const auto one = run_estimate(c, which, 1);
        const auto four = run_estimate(c, which, 4);
        t.slack(one.files == four.files ? 0.0 : -1.0);
    }
    return finish("determinism", t, "estimate pb, diagram and rate with 1 and 4 workers");
}

template <class Fn>
CheckResult timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

Scale parse_scale(const std::string& text) {
    if (text == "smoke") return Scale::smoke;
    if (text == "default") return Scale::standard;
    if (text == "deep") return Scale::deep;
    throw ConfigError("unknown scale '" + text + "' (expected smoke, default or deep)");
}

std::string to_string(Scale scale) {
    switch (scale) {
        case Scale::smoke: return "smoke";
        case Scale::standard: return "default";
        case Scale::deep: return "deep";
    }
    return "default";
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(Scale scale, int jobs) {
    const Sizes z = sizes(scale);
    VerifyReport rep;
    rep.scale = scale;
    rep.checks.push_back(timed([] { return boundary_examples(); }));
    rep.checks.push_back(timed([&] { return chain_complex(z, jobs); }));
    rep.checks.push_back(timed([] { return cube_counts(); }));

    CorpusTallies corpus;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& part : run_indexed(z.corpus, jobs, corpus_member)) {
        corpus.triangle.merge(part.triangle);
        corpus.trivial.merge(part.trivial);
        corpus.difference.merge(part.difference);
        corpus.rectangle.merge(part.rectangle);
        corpus.total_mass.merge(part.total_mass);
    }
    const double corpus_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.checks.push_back(finish("k_triangle", corpus.triangle,
                                "quadrant mass against the rank formula, 25 (s, t) points, d = 2, 3, n <= 3"));
    Tally inequalities;
    for (const Tally* t : {&corpus.trivial, &corpus.difference, &corpus.rectangle, &corpus.total_mass})
        inequalities.merge(*t);
    auto slack_text = [](const Tally& t) { return format_double(t.count ? t.worst : 0.0); };
    rep.checks.push_back(finish("inequalities", inequalities,
                                "worst slack: trivial " + slack_text(corpus.trivial) + ", difference " +
                                    slack_text(corpus.difference) + ", rectangle " + slack_text(corpus.rectangle) +
                                    ", total mass " + slack_text(corpus.total_mass)));
    rep.checks[3].seconds = rep.checks[4].seconds = corpus_seconds / 2;

    rep.checks.push_back(timed([&] {
        Tally t;
        for (auto& runs : run_indexed(z.gap_seeds, jobs, gap_runs))
            for (auto& g : runs) {
                t.slack(g.bound - g.measured);
                rep.gaps.push_back(std::move(g));
            }
        return finish("gap_bounds", t, "near additivity and regularity, upper, lower and perturbed lattice, d = 2");
    }));
    rep.checks.push_back(timed([&] { return log_mgf_structure(z, jobs); }));
    rep.checks.push_back(timed([&] {
        std::string detail;
        auto r = rate_zero(jobs, detail);
        r.detail = detail;
        return r;
    }));
    rep.checks.push_back(timed([&] {
        std::string detail;
        auto r = lln_drift(jobs, detail);
        r.detail = detail;
        return r;
    }));
    rep.checks.push_back(timed([&] { return determinism(z); }));
    return rep;
}

CommandOutput verify_output(const VerifyReport& report) {
    using nlohmann::ordered_json;
    CommandOutput out;
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["format_version"] = kFormatVersion;
    doc["scale"] = to_string(report.scale);
    doc["passed"] = report.passed();
    doc["checks"] = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["count"] = c.count;
        j["worst_margin"] = c.worst_margin;
        j["detail"] = c.detail;
        doc["checks"].push_back(std::move(j));
        out.summary += std::string(c.passed ? "PASS " : "FAIL ") + c.name + " count=" + std::to_string(c.count) +
                       " worst_margin=" + format_double(c.worst_margin) + " seconds=" + format_double(std::round(c.seconds * 100) / 100) +
                       (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    }
    out.summary += report.passed() ? "all checks passed\n" : "some checks FAILED\n";
    out.files.emplace_back("report.json", doc.dump(2) + "\n");

    std::string gap = csv_row({"kind", "k", "r", "m", "n", "h", "measured", "bound", "pass"});
    for (const auto& g : report.gaps)
        gap += csv_row({g.kind, std::to_string(g.k), std::to_string(g.r), std::to_string(g.m), std::to_string(g.n),
                        std::to_string(g.h), format_double(g.measured), format_double(g.bound),
                        g.pass ? "true" : "false"});
    out.files.emplace_back("gap.csv", std::move(gap));
    return out;
}

}  // namespace cubeph
