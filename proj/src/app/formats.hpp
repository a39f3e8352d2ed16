#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "filtration.hpp"
#include "persistence.hpp"

namespace cubeph {

/// Failure categories that the command layer maps to exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

/// Shortest decimal that reads back to the same double; "inf" for +inf.
std::string format_double(double x);
/// Inverse of format_double; throws DataError on malformed text.
double parse_double(std::string_view text);

/// Ordered key=value pairs carried in a file header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Filtration dump:
///   # cubeph filtration v1
///   # dim=2 lo=-1,-1 hi=1,1 [more key=value]
///   <canonical cube> <birth>      one line per finite-birth cube
struct FiltrationFile {
    Metadata meta;
    Filtration filtration{Window{1, 0}};
};

void write_filtration(std::ostream& out, const Filtration& f, const Metadata& extra = {});
FiltrationFile read_filtration(std::istream& in);

/// Diagram file:
///   # cubeph diagram v1
///   # max_degree=1 [more key=value]
///   <q> <birth> <death>           sorted by degree, birth, death
struct DiagramFile {
    Metadata meta;
    PersistenceDiagram diagram{0};
};

void write_diagram(std::ostream& out, const PersistenceDiagram& d, const Metadata& extra = {});
void write_diagram(std::ostream& out, const DiagramFile& file);
DiagramFile read_diagram(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Comma-joined cells with a trailing newline.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace cubeph
