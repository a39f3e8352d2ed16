#include "commands.hpp"

#include <filesystem>
#include <sstream>

#include "formats.hpp"
#include "parallel.hpp"

namespace cubeph {

namespace {

std::string num(double x) { return format_double(x); }

Metadata run_metadata(const ExperimentConfig& c, int n, int trial) {
    return {{"model", to_string(c.model.kind)},
            {"n", std::to_string(n)},
            {"seed", std::to_string(c.seed)},
            {"trial", std::to_string(trial)}};
}

std::string suffix(int q, int n) { return "_q" + std::to_string(q) + "_n" + std::to_string(n) + ".csv"; }

MonteCarlo monte_carlo(const ExperimentConfig& c, int jobs) {
    return MonteCarlo{c.model, c.trials, c.seed, jobs};
}

void pb_files(const ExperimentConfig& c, int jobs, CommandOutput& out) {
    if (c.pairs.empty()) throw ConfigError("pairs: at least one (s, t) pair is required");
    const std::string model = to_string(c.model.kind);
    std::string density = csv_row({"model", "q", "s", "t", "n", "trial", "value"});
    std::string summary = csv_row({"model", "q", "s", "t", "n", "trials", "mean", "std"});
    for (int q : c.q_list) {
        for (int n : c.n_list) {
            const PbEstimate e = estimate_pb_density(monte_carlo(c, jobs), q, c.pairs, n);
            for (std::size_t p = 0; p < c.pairs.size(); ++p) {
                const std::string s = num(c.pairs[p].s), t = num(c.pairs[p].t);
                for (std::size_t k = 0; k < e.values.size(); ++k)
                    density += csv_row({model, std::to_string(q), s, t, std::to_string(n), std::to_string(k),
                                        num(e.values[k][p])});
                summary += csv_row({model, std::to_string(q), s, t, std::to_string(n), std::to_string(c.trials),
                                    num(e.mean[p]), num(e.std[p])});
                out.summary += "q=" + std::to_string(q) + " n=" + std::to_string(n) + " (s,t)=(" + s + "," + t +
                               ") mean=" + num(e.mean[p]) + " std=" + num(e.std[p]) + "\n";
            }
        }
    }
    out.files.emplace_back("pb_density.csv", std::move(density));
    out.files.emplace_back("pb_summary.csv", std::move(summary));
}

void histogram_files(const ExperimentConfig& c, int jobs, CommandOutput& out) {
    for (int q : c.q_list) {
        for (int n : c.n_list) {
            const MeanDiagram m = estimate_mean_diagram(monte_carlo(c, jobs), q, n, c.histogram_l);
            std::string csv = csv_row({"l", "i", "j", "count", "normalized"});
            for (const auto& [key, count] : m.total.counts())
                csv += csv_row({std::to_string(c.histogram_l), std::to_string(key.first), std::to_string(key.second),
                                num(count), num(m.mean.count(key.first, key.second))});
            out.files.emplace_back("histogram" + suffix(q, n), std::move(csv));
            out.summary += "q=" + std::to_string(q) + " n=" + std::to_string(n) + " binned=" +
                           num(m.total.total() - m.total.overflow() - m.total.infinite()) +
                           " outside=" + num(m.total.overflow()) + " infinite=" + num(m.total.infinite()) + "\n";
        }
    }
}

void mgf_files(const ExperimentConfig& c, int jobs, bool with_rate, CommandOutput& out) {
    if (with_rate)
        require_x_grid(c);
    else
        require_lambda_grid(c);
    const auto h = c.pairs.size();
    for (int q : c.q_list) {
        for (int n : c.n_list) {
            const GridFunction phi = estimate_log_mgf(monte_carlo(c, jobs), q, c.pairs, c.lambda_grid, n);
            std::vector<std::string> header;
            for (std::size_t a = 0; a < h; ++a) header.push_back("lambda_" + std::to_string(a + 1));
            header.insert(header.end(), {"phi_hat", "n", "trials"});
            std::string csv = csv_row(header);
            for (std::size_t i = 0; i < phi.grid.size(); ++i) {
                std::vector<std::string> row;
                for (double x : phi.grid.point(i)) row.push_back(num(x));
                row.insert(row.end(), {num(phi.values[i]), std::to_string(n), std::to_string(phi.trials)});
                csv += csv_row(row);
            }
            out.files.emplace_back("mgf" + suffix(q, n), std::move(csv));
            if (!with_rate) {
                out.summary += "q=" + std::to_string(q) + " n=" + std::to_string(n) + " log-MGF on " +
                               std::to_string(phi.grid.size()) + " grid points\n";
                continue;
            }

            const GridFunction rate = legendre_transform(phi, c.x_grid);
            header.clear();
            for (std::size_t a = 0; a < h; ++a) header.push_back("x_" + std::to_string(a + 1));
            header.push_back("phi_star");
            csv = csv_row(header);
            std::size_t argmin = 0;
            for (std::size_t i = 0; i < rate.grid.size(); ++i) {
                std::vector<std::string> row;
                for (double x : rate.grid.point(i)) row.push_back(num(x));
                row.push_back(num(rate.values[i]));
                csv += csv_row(row);
                if (rate.values[i] < rate.values[argmin]) argmin = i;
            }
            out.files.emplace_back("rate" + suffix(q, n), std::move(csv));
            std::string where;
            for (double x : rate.grid.point(argmin)) where += (where.empty() ? "" : ",") + num(x);
            out.summary += "q=" + std::to_string(q) + " n=" + std::to_string(n) + " min phi_star=" +
                           num(rate.values[argmin]) + " at x=(" + where + ")\n";
        }
    }
}

}  // namespace

CommandOutput run_sample(const ExperimentConfig& c, int jobs) {
    CommandOutput out;
    for (int n : c.n_list) {
        auto dumps = run_indexed(c.trials, jobs, [&](int k) {
            const Filtration f = sample(c.model, n, Seed{c.seed, static_cast<std::uint64_t>(k)});
            std::ostringstream text;
            write_filtration(text, f, run_metadata(c, n, k));
            std::string counts;
            for (auto count : f.finite_counts_by_dimension()) counts += " " + std::to_string(count);
            return std::make_pair(text.str(), counts);
        });
        for (int k = 0; k < c.trials; ++k) {
            auto& [text, counts] = dumps[static_cast<std::size_t>(k)];
            out.files.emplace_back("filtration_n" + std::to_string(n) + "_trial" + std::to_string(k) + ".txt",
                                   std::move(text));
            out.summary += "n=" + std::to_string(n) + " trial=" + std::to_string(k) +
                           " finite cubes per dimension:" + counts + "\n";
        }
    }
    return out;
}

CommandOutput run_diagram(const ExperimentConfig& c, int jobs) {
    CommandOutput out;
    for (int n : c.n_list) {
        auto texts = run_indexed(c.trials, jobs, [&](int k) {
            const Filtration f = sample(c.model, n, Seed{c.seed, static_cast<std::uint64_t>(k)});
            const PersistenceDiagram d = compute_diagram(f);
            Metadata meta{{"dim", std::to_string(c.model.dim)}};
            for (auto& kv : run_metadata(c, n, k)) meta.push_back(std::move(kv));
            std::ostringstream text;
            write_diagram(text, d, meta);
            std::string sizes;
            for (int q = 0; q <= d.max_degree(); ++q) sizes += " " + std::to_string(d.size(q));
            return std::make_pair(text.str(), sizes);
        });
        for (int k = 0; k < c.trials; ++k) {
            auto& [text, sizes] = texts[static_cast<std::size_t>(k)];
            out.files.emplace_back("diagram_n" + std::to_string(n) + "_trial" + std::to_string(k) + ".txt",
                                   std::move(text));
            out.summary += "n=" + std::to_string(n) + " trial=" + std::to_string(k) + " pairs per degree:" + sizes +
                           "\n";
        }
    }
    return out;
}

std::string diagram_of_dump(const std::string& dump_text) {
    std::istringstream in(dump_text);
    const FiltrationFile file = read_filtration(in);
    if (const auto v = validate(file.filtration)) throw DataError(v->message());
    const PersistenceDiagram d = compute_diagram(file.filtration);
    std::ostringstream out;
    write_diagram(out, d, file.meta);
    return out.str();
}

CommandOutput run_estimate(const ExperimentConfig& c, const std::string& which, int jobs) {
    CommandOutput out;
    if (which == "pb")
        pb_files(c, jobs, out);
    else if (which == "diagram")
        histogram_files(c, jobs, out);
    else if (which == "mgf")
        mgf_files(c, jobs, false, out);
    else if (which == "rate")
        mgf_files(c, jobs, true, out);
    else
        throw ConfigError("unknown estimate '" + which + "' (expected pb, diagram, mgf or rate)");
    return out;
}

void write_outputs(const CommandOutput& output, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
    for (const auto& [name, content] : output.files)
        write_text_file((std::filesystem::path(dir) / name).string(), content);
}

}  // namespace cubeph
