#include "cubeph/cubeph.h"

#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "formats.hpp"
#include "verify.hpp"

struct cph_config {
    cubeph::ExperimentConfig value;
};

struct cph_filtration {
    cubeph::Filtration value;
    cubeph::Metadata meta;
};

struct cph_diagram {
    cubeph::DiagramFile value;
};

namespace {

using namespace cubeph;

thread_local std::string last_error;
thread_local std::string last_output;

cph_status fail(cph_status status, const std::string& message) {
    last_error = message;
    return status;
}

/// Runs fn and maps exceptions to status codes. Bare std::invalid_argument
/// comes from parameter checks deep in the library; commands driven by a
/// config report it as a config error.
template <class Fn>
cph_status guard(Fn&& fn, cph_status invalid = CPH_INVALID_ARGUMENT) {
    last_error.clear();
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(CPH_CONFIG_ERROR, e.what());
    } catch (const DataError& e) {
        return fail(CPH_DATA_ERROR, e.what());
    } catch (const IoError& e) {
        return fail(CPH_IO_ERROR, e.what());
    } catch (const InvalidFiltration& e) {
        return fail(CPH_DATA_ERROR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(invalid, e.what());
    } catch (const std::out_of_range& e) {
        return fail(invalid, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CPH_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(CPH_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(CPH_INTERNAL_ERROR, "unknown error");
    }
}

std::string out_dir(const cph_config* config, const char* dir) {
    if (dir && *dir) return dir;
    if (config && !config->value.out.empty()) return config->value.out;
    return ".";
}

#define CPH_REQUIRE(cond, what) \
    if (!(cond)) return fail(CPH_INVALID_ARGUMENT, what)
#define CPH_REQUIRE_JOBS(jobs) CPH_REQUIRE((jobs) >= 1 && (jobs) <= 1024, "jobs must lie in [1, 1024]")

}  // namespace

extern "C" {

const char* cph_version(void) { return "1.0.0"; }
int cph_schema_version(void) { return kSchemaVersion; }
int cph_format_version(void) { return kFormatVersion; }
const char* cph_last_error(void) { return last_error.c_str(); }
const char* cph_last_output(void) { return last_output.c_str(); }

cph_status cph_config_load(const char* path, cph_config** out) {
    CPH_REQUIRE(path && out, "null argument");
    *out = nullptr;
    return guard([&] {
        *out = new cph_config{load_config(path)};
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

cph_status cph_config_parse(const char* json_text, cph_config** out) {
    CPH_REQUIRE(json_text && out, "null argument");
    *out = nullptr;
    return guard([&] {
        *out = new cph_config{parse_config(json_text)};
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

const char* cph_config_out_dir(const cph_config* config) { return config ? config->value.out.c_str() : ""; }

void cph_config_free(cph_config* config) { delete config; }

cph_status cph_filtration_create(int dim, int n, cph_filtration** out) {
    CPH_REQUIRE(out, "null argument");
    *out = nullptr;
    CPH_REQUIRE(dim >= 1 && dim <= kMaxDim, "dimension must lie in [1, 6]");
    CPH_REQUIRE(n >= 0 && n <= 100000, "window size out of range");
    return guard([&] {
        *out = new cph_filtration{Filtration(Window{dim, n}), {}};
        return CPH_OK;
    });
}

cph_status cph_filtration_sample(const cph_config* config, int n, uint64_t trial, cph_filtration** out) {
    CPH_REQUIRE(config && out, "null argument");
    *out = nullptr;
    CPH_REQUIRE(n >= 1, "window size must be >= 1");
    return guard([&] {
        const auto& c = config->value;
        Metadata meta{{"model", to_string(c.model.kind)},
                      {"n", std::to_string(n)},
                      {"seed", std::to_string(c.seed)},
                      {"trial", std::to_string(trial)}};
        *out = new cph_filtration{sample(c.model, n, Seed{c.seed, trial}), std::move(meta)};
        return CPH_OK;
    });
}

cph_status cph_filtration_read(const char* path, cph_filtration** out) {
    CPH_REQUIRE(path && out, "null argument");
    *out = nullptr;
    return guard([&] {
        std::istringstream in(read_text_file(path));
        FiltrationFile file = read_filtration(in);
        *out = new cph_filtration{std::move(file.filtration), std::move(file.meta)};
        return CPH_OK;
    });
}

cph_status cph_filtration_write(const cph_filtration* f, const char* path) {
    CPH_REQUIRE(f && path, "null argument");
    return guard([&] {
        std::ostringstream text;
        write_filtration(text, f->value, f->meta);
        write_text_file(path, text.str());
        return CPH_OK;
    });
}

int cph_filtration_dim(const cph_filtration* f) { return f ? f->value.dim() : 0; }

cph_status cph_filtration_set_birth(cph_filtration* f, const char* cube, double birth) {
    CPH_REQUIRE(f && cube, "null argument");
    return guard([&] {
        const auto c = ElementaryCube::parse(cube);
        if (c.ambient_dim() != f->value.dim() || !f->value.box().contains(c))
            throw std::invalid_argument(std::string("cube ") + cube + " lies outside the filtration");
        f->value.set_birth(c, birth);
        return CPH_OK;
    });
}

cph_status cph_filtration_get_birth(const cph_filtration* f, const char* cube, double* birth) {
    CPH_REQUIRE(f && cube && birth, "null argument");
    return guard([&] {
        const auto c = ElementaryCube::parse(cube);
        if (c.ambient_dim() != f->value.dim() || !f->value.box().contains(c))
            throw std::invalid_argument(std::string("cube ") + cube + " lies outside the filtration");
        *birth = f->value.birth(c);
        return CPH_OK;
    });
}

cph_status cph_filtration_validate(const cph_filtration* f) {
    CPH_REQUIRE(f, "null argument");
    return guard([&] {
        if (const auto v = validate(f->value)) return fail(CPH_DATA_ERROR, v->message());
        return CPH_OK;
    });
}

cph_status cph_persistent_betti(const cph_filtration* f, int q, double s, double t, int64_t* out) {
    CPH_REQUIRE(f && out, "null argument");
    return guard([&] {
        *out = persistent_betti_direct(f->value, q, s, t);
        return CPH_OK;
    });
}

void cph_filtration_free(cph_filtration* f) { delete f; }

cph_status cph_diagram_compute(const cph_filtration* f, cph_diagram** out) {
    CPH_REQUIRE(f && out, "null argument");
    *out = nullptr;
    return guard([&] {
        if (const auto v = validate(f->value)) return fail(CPH_DATA_ERROR, v->message());
        auto* d = new cph_diagram;
        d->value.diagram = compute_diagram(f->value);
        d->value.meta = {{"max_degree", std::to_string(d->value.diagram.max_degree())}};
        for (const auto& kv : f->meta) d->value.meta.push_back(kv);
        *out = d;
        return CPH_OK;
    });
}

cph_status cph_diagram_read(const char* path, cph_diagram** out) {
    CPH_REQUIRE(path && out, "null argument");
    *out = nullptr;
    return guard([&] {
        std::istringstream in(read_text_file(path));
        *out = new cph_diagram{read_diagram(in)};
        return CPH_OK;
    });
}

cph_status cph_diagram_write(const cph_diagram* d, const char* path) {
    CPH_REQUIRE(d && path, "null argument");
    return guard([&] {
        std::ostringstream text;
        write_diagram(text, d->value);
        write_text_file(path, text.str());
        return CPH_OK;
    });
}

int cph_diagram_max_degree(const cph_diagram* d) { return d ? d->value.diagram.max_degree() : -1; }

size_t cph_diagram_size(const cph_diagram* d, int q) { return d ? d->value.diagram.size(q) : 0; }

cph_status cph_diagram_pair(const cph_diagram* d, int q, size_t index, double* birth, double* death) {
    CPH_REQUIRE(d && birth && death, "null argument");
    const auto pairs = d->value.diagram.pairs(q);
    CPH_REQUIRE(index < pairs.size(), "pair index out of range");
    *birth = pairs[index].birth;
    *death = pairs[index].death;
    return CPH_OK;
}

cph_status cph_quadrant_mass(const cph_diagram* d, int q, double s, double t, int64_t* out) {
    CPH_REQUIRE(d && out, "null argument");
    return guard([&] {
        *out = quadrant_mass(d->value.diagram, q, s, t);
        return CPH_OK;
    });
}

void cph_diagram_free(cph_diagram* d) { delete d; }

cph_status cph_run_sample(const cph_config* config, const char* dir, int jobs) {
    CPH_REQUIRE(config, "null argument");
    CPH_REQUIRE_JOBS(jobs);
    last_output.clear();
    return guard([&] {
        const auto out = run_sample(config->value, jobs);
        write_outputs(out, out_dir(config, dir));
        last_output = out.summary;
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

cph_status cph_run_diagram(const cph_config* config, const char* dir, int jobs) {
    CPH_REQUIRE(config, "null argument");
    CPH_REQUIRE_JOBS(jobs);
    last_output.clear();
    return guard([&] {
        const auto out = run_diagram(config->value, jobs);
        write_outputs(out, out_dir(config, dir));
        last_output = out.summary;
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

cph_status cph_run_diagram_file(const char* input_path, const char* output_path) {
    CPH_REQUIRE(input_path, "null argument");
    last_output.clear();
    return guard([&] {
        const std::string text = diagram_of_dump(read_text_file(input_path));
        std::string target = output_path && *output_path ? output_path : "";
        if (target.empty()) {
            std::filesystem::path p(input_path);
            target = (p.parent_path() / (p.stem().string() + ".diagram.txt")).string();
        }
        write_text_file(target, text);
        last_output = "wrote " + target + "\n";
        return CPH_OK;
    }, CPH_DATA_ERROR);
}

cph_status cph_run_estimate(const cph_config* config, const char* which, const char* dir, int jobs) {
    CPH_REQUIRE(config && which, "null argument");
    CPH_REQUIRE_JOBS(jobs);
    last_output.clear();
    return guard([&] {
        const auto out = run_estimate(config->value, which, jobs);
        write_outputs(out, out_dir(config, dir));
        last_output = out.summary;
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

cph_status cph_run_verify(const char* scale, const char* dir, int jobs, const char* const* inputs,
                          size_t input_count) {
    CPH_REQUIRE(input_count == 0 || inputs, "null argument");
    CPH_REQUIRE_JOBS(jobs);
    last_output.clear();
    return guard([&] {
        const Scale s = parse_scale(scale ? scale : "default");
        for (size_t i = 0; i < input_count; ++i) {
            CPH_REQUIRE(inputs[i], "null argument");
            std::istringstream in(read_text_file(inputs[i]));
            const FiltrationFile file = read_filtration(in);
            if (const auto v = validate(file.filtration))
                return fail(CPH_DATA_ERROR, std::string(inputs[i]) + ": " + v->message());
        }
        const VerifyReport report = run_verify(s, jobs);
        const auto out = verify_output(report);
        write_outputs(out, out_dir(nullptr, dir));
        last_output = out.summary;
        if (!report.passed()) return fail(CPH_SUITE_FAILED, "property suite failed");
        return CPH_OK;
    }, CPH_CONFIG_ERROR);
}

}  // extern "C"
