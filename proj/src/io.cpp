#include "chaincal/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chaincal/version.hpp"

namespace chaincal {

Json to_json(const ProblemGraph& graph) {
    Json j;
    j["num_qubits"] = graph.num_qubits;
    Json edges = Json::array();
    for (const Edge& e : graph.edges) edges.push_back(Json::array({e.a, e.b, e.coupling}));
    j["edges"] = std::move(edges);
    if (!graph.roles.empty()) {
        Json roles = Json::array();
        for (QubitRole r : graph.roles)
            roles.push_back(r == QubitRole::lattice ? "lattice" : "chain");
        j["labels"] = std::move(roles);
    }
    return j;
}

ProblemGraph problem_graph_from_json(const Json& j) {
    ProblemGraph graph;
    graph.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& e : j.at("edges"))
        graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    if (j.contains("labels")) {
        for (const auto& label : j.at("labels")) {
            const std::string s = label.get<std::string>();
            if (s == "lattice")
                graph.roles.push_back(QubitRole::lattice);
            else if (s == "chain")
                graph.roles.push_back(QubitRole::chain);
            else
                throw std::invalid_argument("unknown qubit label: " + s);
        }
    }
    graph.validate();
    return graph;
}

Json to_json(const ChainSet& chains) {
    Json arr = Json::array();
    for (const Chain& c : chains.chains) arr.push_back({{"site", c.site}, {"length", c.length}});
    return Json{{"chains", std::move(arr)}};
}

ChainSet chain_set_from_json(const Json& j) {
    ChainSet chains;
    for (const auto& c : j.at("chains"))
        chains.chains.push_back({c.at("site").get<int>(), c.at("length").get<int>()});
    chains.canonicalize();
    return chains;
}

Json to_json(const EmbeddedProblem& embedded) {
    Json j;
    j["jc"] = embedded.jc;
    j["chains"] = to_json(embedded.chains)["chains"];
    j["base"] = to_json(embedded.base);
    return j;
}

EmbeddedProblem embedded_from_json(const Json& j) {
    const ProblemGraph base = problem_graph_from_json(j.at("base"));
    ChainSet chains;
    for (const auto& c : j.at("chains"))
        chains.chains.push_back({c.at("site").get<int>(), c.at("length").get<int>()});
    return embed(base, chains, j.at("jc").get<double>());
}

Json to_json(const GapReport& report) {
    return Json{{"e0", report.e0},
                {"e1", report.e1},
                {"g0", report.g0},
                {"gap", report.gap},
                {"single_level", report.single_level}};
}

Json to_json(const KinkScan& scan) {
    Json j;
    j["found"] = scan.found;
    j["delta_s"] = scan.delta_s;
    j["gap_lo"] = scan.gap_lo;
    j["gap_hi"] = scan.gap_hi;
    if (scan.found) {
        j["jc_star"] = scan.report.jc_star;
        j["jc_dstar"] = scan.report.jc_dstar;
        j["gap_at_dstar"] = scan.report.gap_at_dstar;
    } else {
        j["diagnosis"] = scan.diagnosis;
    }
    return j;
}

Json to_json(const PEstimate& estimate) {
    return Json{{"p", estimate.p},
                {"hits", estimate.hits},
                {"shots", estimate.shots},
                {"wilson_lo", estimate.wilson_lo},
                {"wilson_hi", estimate.wilson_hi}};
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

Json to_json(const RunManifest& manifest) {
    Json j;
    j["format"] = "chaincal-manifest/1";
    j["tool"] = "chaincal";
    j["version"] = kVersion;
    j["command"] = manifest.command;
    j["master_seed"] = manifest.master_seed;
    j["plan"] = manifest.plan;
    j["started"] = manifest.started;
    j["finished"] = manifest.finished;
    j["outputs"] = manifest.outputs;
    return j;
}

void validate_manifest(const Json& j) {
    auto require = [&](const char* key, bool ok) {
        if (!j.contains(key) || !ok)
            throw std::invalid_argument(std::string("manifest field missing or mistyped: ") + key);
    };
    require("format", j.contains("format") && j["format"].is_string() &&
                          j["format"] == "chaincal-manifest/1");
    require("tool", j.contains("tool") && j["tool"].is_string());
    require("version", j.contains("version") && j["version"].is_string());
    require("command", j.contains("command") && j["command"].is_string());
    require("master_seed", j.contains("master_seed") && j["master_seed"].is_number_unsigned());
    require("plan", j.contains("plan") && j["plan"].is_object());
    require("started", j.contains("started") && j["started"].is_string());
    require("finished", j.contains("finished") && j["finished"].is_string());
    require("outputs", j.contains("outputs") && j["outputs"].is_array());
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace chaincal
