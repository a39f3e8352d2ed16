#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "formats.hpp"
#include "json.hpp"

namespace cubeph {

namespace {

using nlohmann::json;

// Cells of the largest grid a window may need; keeps a typo in n from
// exhausting memory.
constexpr double kMaxCells = 6.0e7;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!ok.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

const json& need(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, "expected a finite number");
    return x;
}

long long integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<long long>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<int> integers(const json& v, const std::string& where) {
    std::vector<int> out;
    if (v.is_number_integer()) {
        out.push_back(static_cast<int>(integer(v, where)));
        return out;
    }
    if (!v.is_array() || v.empty()) fail(where, "expected an integer or a nonempty array of integers");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto x = integer(v[i], where + "[" + std::to_string(i) + "]");
        if (x < -1000000 || x > 1000000) fail(where, "value out of range");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

Distribution distribution(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    const std::string family = need(v, "family", where).is_string() ? v.at("family").get<std::string>() : "";
    Distribution out;
    try {
        if (family == "point_mass") {
            only_keys(v, where, {"family", "value", "inf_mass"});
            out = Distribution::point(number(need(v, "value", where), where + ".value"));
        } else if (family == "uniform") {
            only_keys(v, where, {"family", "min", "max", "inf_mass"});
            out = Distribution::uniform(number(need(v, "min", where), where + ".min"),
                                        number(need(v, "max", where), where + ".max"));
        } else if (family == "exponential") {
            only_keys(v, where, {"family", "rate", "inf_mass"});
            out = Distribution::exponential(number(need(v, "rate", where), where + ".rate"));
        } else if (family == "empirical") {
            only_keys(v, where, {"family", "values", "cdf", "inf_mass"});
            out = Distribution::empirical(numbers(need(v, "values", where), where + ".values"),
                                          numbers(need(v, "cdf", where), where + ".cdf"));
        } else {
            fail(where + ".family", "unknown distribution family '" + family +
                                        "' (expected point_mass, uniform, exponential or empirical)");
        }
        if (v.contains("inf_mass")) out.inf_mass = number(v.at("inf_mass"), where + ".inf_mass");
        out.check();
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    return out;
}

Perturbation perturbation(const json& v, const std::string& where) {
    only_keys(v, where, {"family", "at", "scale"});
    const auto& fam = need(v, "family", where);
    if (!fam.is_string()) fail(where + ".family", "expected a string");
    Perturbation out;
    try {
        out.family = parse_perturbation_family(fam.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where + ".family", e.what());
    }
    if (v.contains("at")) out.at = numbers(v.at("at"), where + ".at");
    if (v.contains("scale")) out.scale = number(v.at("scale"), where + ".scale");
    return out;
}

ModelSpec model(const json& v) {
    const std::string where = "model";
    only_keys(v, where, {"kind", "d", "marks", "perturbation", "grid_points"});
    ModelSpec spec;
    const auto& kind = need(v, "kind", where);
    if (!kind.is_string()) fail("model.kind", "expected a string");
    try {
        spec.kind = parse_model_kind(kind.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail("model.kind", e.what());
    }
    const auto d = integer(need(v, "d", where), "model.d");
    if (d < 1 || d > kMaxDim) fail("model.d", "must lie in [1, 6]");
    spec.dim = static_cast<int>(d);

    const bool marked = spec.kind == ModelKind::upper || spec.kind == ModelKind::lower;
    if (marked) {
        const auto& marks = need(v, "marks", where);
        if (marks.is_array()) {
            if (marks.size() != static_cast<std::size_t>(spec.dim + 1))
                fail("model.marks", "needs d + 1 laws, one per cube dimension 0..d, or a single law");
            for (std::size_t i = 0; i < marks.size(); ++i)
                spec.marks.push_back(distribution(marks[i], "model.marks[" + std::to_string(i) + "]"));
        } else {
            spec.marks.assign(static_cast<std::size_t>(spec.dim + 1), distribution(marks, "model.marks"));
        }
        if (v.contains("perturbation")) fail("model.perturbation", "only used by the lattice-point models");
    } else {
        spec.perturbation = perturbation(need(v, "perturbation", where), "model.perturbation");
        if (v.contains("marks")) fail("model.marks", "only used by the upper and lower models");
    }
    if (v.contains("grid_points")) {
        if (spec.kind != ModelKind::ball_cover) fail("model.grid_points", "only used by the ball_cover model");
        const auto g = integer(v.at("grid_points"), "model.grid_points");
        if (g < 2 || g > 1000) fail("model.grid_points", "must lie in [2, 1000]");
        spec.grid_points = static_cast<int>(g);
    }
    try {
        spec.check();
    } catch (const std::invalid_argument& e) {
        fail("model", e.what());
    }
    return spec;
}

Grid grid(const json& v, const std::string& where, int h) {
    auto uniform_axis = [&](const json& a, const std::string& w) {
        only_keys(a, w, {"min", "max", "count"});
        const double lo = number(need(a, "min", w), w + ".min");
        const double hi = number(need(a, "max", w), w + ".max");
        const auto count = integer(need(a, "count", w), w + ".count");
        if (count < 1 || count > 100000) fail(w + ".count", "must lie in [1, 100000]");
        if (count > 1 && !(hi > lo)) fail(w, "needs max > min");
        return Grid::uniform(1, lo, hi, static_cast<int>(count)).axes[0];
    };
    Grid g;
    if (v.is_object() && v.contains("axes")) {
        only_keys(v, where, {"axes"});
        const auto& axes = v.at("axes");
        if (!axes.is_array()) fail(where + ".axes", "expected an array");
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const std::string w = where + ".axes[" + std::to_string(i) + "]";
            g.axes.push_back(axes[i].is_array() ? numbers(axes[i], w) : uniform_axis(axes[i], w));
        }
    } else {
        g.axes.assign(static_cast<std::size_t>(std::max(h, 1)), uniform_axis(v, where));
    }
    try {
        g.check();
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    if (g.dim() != h) fail(where, "needs one axis per (s, t) pair (" + std::to_string(h) + ")");
    if (g.size() > 2000000) fail(where, "more than 2e6 grid points");
    return g;
}

double window_cells(const ModelSpec& spec, int n) {
    int margin = 1;
    if (spec.kind == ModelKind::ball_cover) margin += spec.dependence_range();
    return std::pow(4.0 * (n + margin) + 1.0, spec.dim);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    only_keys(doc, "config",
              {"schema_version", "model", "q", "n", "trials", "seed", "pairs", "histogram_l", "lambda_grid", "x_grid",
               "out"});

    ExperimentConfig c;
    const auto version = integer(need(doc, "schema_version", "config"), "schema_version");
    if (version != kSchemaVersion)
        fail("schema_version", "unsupported version " + std::to_string(version) + " (this build reads " +
                                   std::to_string(kSchemaVersion) + ")");
    c.schema_version = static_cast<int>(version);
    c.model = model(need(doc, "model", "config"));
    const int d = c.model.dim;

    c.q_list = doc.contains("q") ? integers(doc.at("q"), "q") : std::vector<int>{0};
    for (int q : c.q_list)
        if (q < 0 || q >= d) fail("q", "degrees must lie in [0, d - 1]");
    for (std::size_t i = 1; i < c.q_list.size(); ++i)
        if (c.q_list[i] <= c.q_list[i - 1]) fail("q", "must be strictly increasing");

    c.n_list = integers(need(doc, "n", "config"), "n");
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        if (c.n_list[i] < 1) fail("n", "window sizes must be >= 1");
        if (i > 0 && c.n_list[i] <= c.n_list[i - 1]) fail("n", "must be strictly increasing");
    }
    if (window_cells(c.model, c.n_list.back()) > kMaxCells)
        fail("n", "window " + std::to_string(c.n_list.back()) + " is too large for d = " + std::to_string(d));

    if (doc.contains("trials")) {
        const auto t = integer(doc.at("trials"), "trials");
        if (t < 1 || t > 10000000) fail("trials", "must lie in [1, 1e7]");
        c.trials = static_cast<int>(t);
    }
    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        c.seed = s.get<std::uint64_t>();
    }

    if (doc.contains("pairs")) {
        const auto& pairs = doc.at("pairs");
        if (!pairs.is_array()) fail("pairs", "expected an array of [s, t]");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::string w = "pairs[" + std::to_string(i) + "]";
            const auto st = numbers(pairs[i], w);
            if (st.size() != 2) fail(w, "expected [s, t]");
            if (!(st[0] >= 0 && st[0] <= st[1])) fail(w, "needs 0 <= s <= t");
            c.pairs.push_back({st[0], st[1]});
        }
    }
    const int h = static_cast<int>(c.pairs.size());

    if (doc.contains("histogram_l")) {
        const auto l = integer(doc.at("histogram_l"), "histogram_l");
        if (l < 1 || l > 12) fail("histogram_l", "must lie in [1, 12]");
        c.histogram_l = static_cast<int>(l);
    }
    if (doc.contains("lambda_grid")) {
        if (h == 0) fail("lambda_grid", "needs at least one (s, t) pair");
        c.lambda_grid = grid(doc.at("lambda_grid"), "lambda_grid", h);
        for (std::size_t a = 0; a < c.lambda_grid.axes.size(); ++a) {
            const auto& axis = c.lambda_grid.axes[a];
            if (std::find(axis.begin(), axis.end(), 0.0) == axis.end())
                fail("lambda_grid", "axis " + std::to_string(a) + " must contain 0 exactly");
        }
    }
    if (doc.contains("x_grid")) {
        if (h == 0) fail("x_grid", "needs at least one (s, t) pair");
        c.x_grid = grid(doc.at("x_grid"), "x_grid", h);
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) fail("out", "expected a string");
        c.out = doc.at("out").get<std::string>();
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path));
}

void require_lambda_grid(const ExperimentConfig& config) {
    if (config.pairs.empty()) throw ConfigError("pairs: at least one (s, t) pair is required");
    if (config.lambda_grid.axes.empty()) throw ConfigError("lambda_grid: required for the log-MGF");
    if (config.trials < 2) throw ConfigError("trials: the log-MGF needs at least 2 trials");
}

void require_x_grid(const ExperimentConfig& config) {
    require_lambda_grid(config);
    if (config.x_grid.axes.empty()) throw ConfigError("x_grid: required for the rate function");
}

}  // namespace cubeph
