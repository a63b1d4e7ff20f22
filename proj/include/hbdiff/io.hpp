#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbdiff/diffusion.hpp"
#include "hbdiff/generator.hpp"
#include "hbdiff/hbgraph.hpp"

namespace hbdiff {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"n": int, "labels": [str]?, "edges": [{"w": float, "members": {"<vertex>": mult}}]}
inline nlohmann::json to_json(const HbGraph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    if (!g.labels().empty()) j["labels"] = g.labels();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) {
        nlohmann::json je;
        je["w"] = e.weight;
        auto& mem = je["members"] = nlohmann::json::object();
        for (const auto& [v, m] : e.members) mem[std::to_string(v)] = m;
        edges.push_back(std::move(je));
    }
    return j;
}

inline HbGraph hbgraph_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        std::vector<HbEdge> edges;
        for (const auto& je : j.at("edges")) {
            HbEdge e;
            e.weight = je.at("w").get<double>();
            for (const auto& [key, val] : je.at("members").items()) {
                std::size_t used = 0;
                const unsigned long v = std::stoul(key, &used);
                if (used != key.size()) throw ParseError("bad vertex key '" + key + "'");
                e.members.emplace_back(static_cast<VertexId>(v), val.get<double>());
            }
            edges.push_back(std::move(e));
        }
        return HbGraph(n, std::move(edges), std::move(labels));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("hb-graph JSON: ") + ex.what());
    }
}

inline HbGraph read_hbgraph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(path + ": " + ex.what());
    }
    return hbgraph_from_json(j);
}

inline void write_hbgraph_json(const HbGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(g).dump(2) << "\n";
}

inline nlohmann::json metadata_to_json(const GeneratedHbGraph& gg) {
    nlohmann::json j;
    j["edge_group"] = gg.edge_group;
    j["group_seeds"] = gg.group_seeds;
    j["central"] = gg.central;
    j["pool_id"] = gg.pool_id;
    return j;
}

/// Co-occurrence CSV: one row per document, comma-separated tokens; token
/// repetition inside a row becomes multiplicity. Labels are assigned in
/// order of first appearance; all weights 1.
inline HbGraph ingest_cooc_csv(std::istream& in) {
    std::map<std::string, VertexId> index;
    std::vector<std::string> labels;
    std::vector<HbEdge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && edges.empty() && in.peek() == EOF) break;  // trailing newline only
        std::map<VertexId, double> mult;
        std::stringstream row(line);
        std::string tok;
        bool any = false;
        while (std::getline(row, tok, ',')) {
            // trim surrounding whitespace
            const auto b = tok.find_first_not_of(" \t");
            const auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            tok = tok.substr(b, e - b + 1);
            any = true;
            auto [it, fresh] = index.try_emplace(tok, static_cast<VertexId>(labels.size()));
            if (fresh) labels.push_back(tok);
            mult[it->second] += 1.0;
        }
        if (!any)
            throw ParseError("cooc csv line " + std::to_string(lineno) + ": empty row");
        HbEdge e;
        e.weight = 1.0;
        for (const auto& [v, m] : mult) e.members.emplace_back(v, m);
        edges.push_back(std::move(e));
    }
    if (edges.empty()) throw ParseError("cooc csv: no rows");
    const std::size_t n = labels.size();
    return HbGraph(n, std::move(edges), std::move(labels));
}

inline HbGraph ingest_cooc_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return ingest_cooc_csv(in);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// rank,entity_id,score,tie_group — rank is 1-based position.
inline void write_ranking_csv(const Ranking& r, std::ostream& out) {
    out << "rank,entity_id,score,tie_group\n";
    for (std::size_t k = 0; k < r.size(); ++k)
        out << (k + 1) << ',' << r.order[k] << ',' << format_double(r.scores[k]) << ','
            << r.tie_group[k] << '\n';
}

inline void write_ranking_csv(const Ranking& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_ranking_csv(r, out);
}

/// Square matrix with experiment-index header row and column (1-based).
inline void write_matrix_csv(const std::vector<double>& m, std::size_t dim, std::ostream& out) {
    out << "experiment";
    for (std::size_t j = 0; j < dim; ++j) out << ',' << (j + 1);
    out << '\n';
    for (std::size_t i = 0; i < dim; ++i) {
        out << (i + 1);
        for (std::size_t j = 0; j < dim; ++j) out << ',' << format_double(m[i * dim + j]);
        out << '\n';
    }
}

inline void write_matrix_csv(const std::vector<double>& m, std::size_t dim,
                             const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_matrix_csv(m, dim, out);
}

}  // namespace hbdiff
