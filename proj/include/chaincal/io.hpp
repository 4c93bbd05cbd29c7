#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaincal/annealer.hpp"
#include "chaincal/embedding.hpp"
#include "chaincal/exact.hpp"
#include "chaincal/model.hpp"

namespace chaincal {

using Json = nlohmann::ordered_json;

// --- JSON document formats --------------------------------------------

Json to_json(const ProblemGraph& graph);
ProblemGraph problem_graph_from_json(const Json& j);

Json to_json(const ChainSet& chains);
ChainSet chain_set_from_json(const Json& j);

/// {base, chains, jc}; the composite is rebuilt by embed() on load.
Json to_json(const EmbeddedProblem& embedded);
EmbeddedProblem embedded_from_json(const Json& j);

Json to_json(const GapReport& report);
Json to_json(const KinkScan& scan);  // {found, jc_star, jc_dstar, delta_s, ...} or diagnosis
Json to_json(const PEstimate& estimate);

// --- CSV ----------------------------------------------------------------

/// RFC-4180-style quoting, one header row, '\n' line ends.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

std::string csv_escape(const std::string& field);

/// Fixed-format double for CSV/SVG output; identical across reruns.
std::string format_double(double value);

// --- Run manifest ---------------------------------------------------------

struct RunManifest {
    std::string command;         // CLI subcommand
    Json plan;                   // full resolved plan echo
    std::uint64_t master_seed = 0;
    std::string started;         // ISO 8601 UTC
    std::string finished;
    std::vector<std::string> outputs;
};

Json to_json(const RunManifest& manifest);

/// Checks a manifest document against the published schema
/// (docs/manifest.schema.json); throws std::invalid_argument on violation.
void validate_manifest(const Json& j);

std::string iso8601_now();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace chaincal
