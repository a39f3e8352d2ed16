#include "formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cubeph {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(std::string_view text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw DataError("malformed integer '" + std::string(text) + "'");
    return v;
}

std::string join_ints(const int* v, int count) {
    std::string s;
    for (int i = 0; i < count; ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Reads the "# cubeph <kind> v1" line and the key=value line.
Metadata read_header(std::istream& in, const std::string& kind, int& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty " + kind + " file");
    ++line_no;
    const auto magic = tokens(line);
    if (magic.size() != 4 || magic[0] != "#" || magic[1] != "cubeph" || magic[2] != kind)
        throw DataError("line 1: expected '# cubeph " + kind + " v" + std::to_string(kFormatVersion) + "'");
    if (magic[3] != "v" + std::to_string(kFormatVersion))
        throw DataError("line 1: unsupported " + kind + " format version '" + magic[3] + "'");
    if (!std::getline(in, line)) throw DataError("missing " + kind + " metadata line");
    ++line_no;
    const auto fields = tokens(line);
    if (fields.empty() || fields[0] != "#") throw DataError("line 2: expected '# key=value ...'");
    Metadata meta;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string::npos || eq == 0) throw DataError("line 2: malformed field '" + fields[i] + "'");
        meta.emplace_back(fields[i].substr(0, eq), fields[i].substr(eq + 1));
    }
    return meta;
}

const std::string* find(const Metadata& meta, const std::string& key) {
    for (const auto& [k, v] : meta)
        if (k == key) return &v;
    return nullptr;
}

const std::string& require(const Metadata& meta, const std::string& key, const std::string& kind) {
    const auto* v = find(meta, key);
    if (!v) throw DataError(kind + " header lacks '" + key + "'");
    return *v;
}

void write_meta(std::ostream& out, const Metadata& meta) {
    out << '#';
    for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
    out << '\n';
}

}  // namespace

std::string format_double(double x) {
    if (std::isinf(x) && x > 0) return "inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::logic_error("cannot format double");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    if (text == "inf") return kNever;
    double v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw DataError("malformed number '" + std::string(text) + "'");
    return v;
}

void write_filtration(std::ostream& out, const Filtration& f, const Metadata& extra) {
    const Box& box = f.box();
    out << "# cubeph filtration v" << kFormatVersion << '\n';
    Metadata meta{{"dim", std::to_string(box.dim)},
                  {"lo", join_ints(box.lo.data(), box.dim)},
                  {"hi", join_ints(box.hi.data(), box.dim)}};
    for (const auto& kv : extra)
        if (kv.first != "dim" && kv.first != "lo" && kv.first != "hi") meta.push_back(kv);
    write_meta(out, meta);

    const CellGrid& grid = f.grid();
    std::vector<ElementaryCube> cubes;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (f.birth_at(i) != kNever) cubes.push_back(grid.cube(i));
    std::sort(cubes.begin(), cubes.end());
    for (const auto& c : cubes) out << c.to_string() << ' ' << format_double(f.birth(c)) << '\n';
}

FiltrationFile read_filtration(std::istream& in) {
    int line_no = 0;
    FiltrationFile file;
    file.meta = read_header(in, "filtration", line_no);
    const int dim = parse_int(require(file.meta, "dim", "filtration"));
    if (dim < 1 || dim > kMaxDim) throw DataError("filtration dimension must lie in [1, 6]");
    const auto lo = split(require(file.meta, "lo", "filtration"), ',');
    const auto hi = split(require(file.meta, "hi", "filtration"), ',');
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw DataError("filtration box must have d coordinates");
    Box box;
    box.dim = dim;
    for (int a = 0; a < dim; ++a) {
        box.lo[a] = parse_int(lo[static_cast<std::size_t>(a)]);
        box.hi[a] = parse_int(hi[static_cast<std::size_t>(a)]);
        if (box.hi[a] < box.lo[a]) throw DataError("filtration box has hi < lo");
    }
    file.filtration = Filtration(box);

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = tokens(line);
        if (t.empty() || t[0][0] == '#') continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (t.size() != 2) throw DataError(where + "expected '<cube> <birth>'");
        ElementaryCube cube;
        try {
            cube = ElementaryCube::parse(t[0]);
        } catch (const std::exception& e) {
            throw DataError(where + e.what());
        }
        if (cube.ambient_dim() != dim) throw DataError(where + "cube dimension differs from the header");
        if (!box.contains(cube)) throw DataError(where + "cube " + t[0] + " lies outside the box");
        const double birth = parse_double(t[1]);
        file.filtration.set_birth(cube, birth);
    }
    return file;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& d, const Metadata& extra) {
    DiagramFile file;
    file.meta.emplace_back("max_degree", std::to_string(d.max_degree()));
    for (const auto& kv : extra)
        if (kv.first != "max_degree") file.meta.push_back(kv);
    file.diagram = d;
    write_diagram(out, file);
}

void write_diagram(std::ostream& out, const DiagramFile& file) {
    out << "# cubeph diagram v" << kFormatVersion << '\n';
    write_meta(out, file.meta);
    for (int q = 0; q <= file.diagram.max_degree(); ++q)
        for (const auto& p : file.diagram.pairs(q))
            out << q << ' ' << format_double(p.birth) << ' ' << format_double(p.death) << '\n';
}

DiagramFile read_diagram(std::istream& in) {
    int line_no = 0;
    DiagramFile file;
    file.meta = read_header(in, "diagram", line_no);
    const int max_degree = parse_int(require(file.meta, "max_degree", "diagram"));
    if (max_degree < 0 || max_degree >= kMaxDim) throw DataError("diagram max_degree out of range");
    file.diagram = PersistenceDiagram(max_degree);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = tokens(line);
        if (t.empty() || t[0][0] == '#') continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (t.size() != 3) throw DataError(where + "expected '<q> <birth> <death>'");
        const int q = parse_int(t[0]);
        const double b = parse_double(t[1]), d = parse_double(t[2]);
        if (q < 0 || q > max_degree) throw DataError(where + "degree out of range");
        if (!(b >= 0 && d > b)) throw DataError(where + "pair must satisfy 0 <= birth < death");
        file.diagram.add(q, b, d);
    }
    return file;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    s += '\n';
    return s;
}

}  // namespace cubeph
