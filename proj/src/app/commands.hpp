#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace cubeph {

/// Files a command produces, as (relative name, content), in write order,
/// plus the text printed to standard output.
struct CommandOutput {
    std::vector<std::pair<std::string, std::string>> files;
    std::string summary;
};

/// filtration_n{n}_trial{k}.txt per window size and trial.
CommandOutput run_sample(const ExperimentConfig& config, int jobs);

/// diagram_n{n}_trial{k}.txt per window size and trial.
CommandOutput run_diagram(const ExperimentConfig& config, int jobs);

/// Diagram file text for a filtration dump; throws DataError on malformed
/// input or a monotonicity violation.
std::string diagram_of_dump(const std::string& dump_text);

/// which: pb, diagram, mgf or rate.
CommandOutput run_estimate(const ExperimentConfig& config, const std::string& which, int jobs);

/// Creates `dir` if needed and writes every file; throws IoError.
void write_outputs(const CommandOutput& output, const std::string& dir);

}  // namespace cubeph
