#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gral/error.hpp"
#include "gral/graph.hpp"

namespace gral {

/// What the loader silently repaired, for reporting.
struct LoadStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

namespace detail {

inline long parse_int(const char*& p, const std::string& file, std::size_t line) {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(p, &end, 10);
    if (end == p || errno == ERANGE)
        throw ParseError(file + ":" + std::to_string(line) + ": expected integer");
    p = end;
    return v;
}

inline double parse_double(const char*& p, const std::string& file, std::size_t line) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(p, &end);
    if (end == p || errno == ERANGE || !std::isfinite(v))
        throw ParseError(file + ":" + std::to_string(line) + ": expected finite decimal");
    p = end;
    return v;
}

inline void expect_tab(const char*& p, const std::string& file, std::size_t line) {
    if (*p != '\t') throw ParseError(file + ":" + std::to_string(line) + ": expected tab separator");
    ++p;
}

}  // namespace detail

/// Loads a dataset bundle directory (meta.json, nodes.tsv, edges.tsv).
/// Edges are symmetrized; duplicate edges and self-loops are dropped and
/// counted in `stats` when provided.
inline Graph load_dataset(const std::filesystem::path& dir, LoadStats* stats = nullptr) {
    namespace fs = std::filesystem;
    const fs::path meta_path = dir / "meta.json";
    const fs::path nodes_path = dir / "nodes.tsv";
    const fs::path edges_path = dir / "edges.tsv";
    for (const fs::path& p : {meta_path, nodes_path, edges_path})
        if (!fs::exists(p)) throw LoadError("missing file: " + p.string());

    nlohmann::json meta;
    {
        std::ifstream in(meta_path);
        if (!in) throw LoadError("cannot open " + meta_path.string());
        try {
            in >> meta;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(meta_path.string() + ": " + e.what());
        }
    }
    if (!meta.is_object() || meta.size() != 3 || !meta.contains("num_nodes") ||
        !meta.contains("num_features") || !meta.contains("num_classes"))
        throw ParseError(meta_path.string() +
                         ": expected exactly the keys num_nodes, num_features, num_classes");
    for (const char* key : {"num_nodes", "num_features", "num_classes"})
        if (!meta[key].is_number_integer() || meta[key].get<long>() < 0)
            throw ParseError(meta_path.string() + ": " + key + " must be a nonnegative integer");

    Graph g;
    g.num_nodes = meta["num_nodes"].get<int>();
    g.num_features = meta["num_features"].get<int>();
    g.num_classes = meta["num_classes"].get<int>();
    if (g.num_classes < 1) throw ParseError(meta_path.string() + ": num_classes must be >= 1");

    g.features = DenseMatrix(g.num_nodes, g.num_features);
    g.labels.assign(static_cast<std::size_t>(g.num_nodes), -1);

    // nodes.tsv: <node_id>\t<label>\t<idx>:<val> <idx>:<val> ...
    {
        std::ifstream in(nodes_path);
        if (!in) throw LoadError("cannot open " + nodes_path.string());
        const std::string fname = nodes_path.string();
        std::string line;
        std::size_t lineno = 0, seen = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const char* p = line.c_str();
            const long id = detail::parse_int(p, fname, lineno);
            if (id < 0 || id >= g.num_nodes)
                throw ParseError(fname + ":" + std::to_string(lineno) + ": node id out of range");
            if (g.labels[id] != -1)
                throw ParseError(fname + ":" + std::to_string(lineno) + ": duplicate node id");
            detail::expect_tab(p, fname, lineno);
            const long label = detail::parse_int(p, fname, lineno);
            if (label < 0 || label >= g.num_classes)
                throw ParseError(fname + ":" + std::to_string(lineno) + ": label out of range");
            g.labels[id] = static_cast<int>(label);
            ++seen;
            if (*p == '\0') continue;  // no feature field
            detail::expect_tab(p, fname, lineno);
            std::vector<std::pair<int, double>> pairs;
            while (*p != '\0') {
                while (*p == ' ') ++p;
                if (*p == '\0' || *p == '\r') break;
                const long idx = detail::parse_int(p, fname, lineno);
                if (idx < 0 || idx >= g.num_features)
                    throw ParseError(fname + ":" + std::to_string(lineno) +
                                     ": feature index out of range");
                if (*p != ':')
                    throw ParseError(fname + ":" + std::to_string(lineno) + ": expected idx:val pair");
                ++p;
                const double val = detail::parse_double(p, fname, lineno);
                pairs.emplace_back(static_cast<int>(idx), val);
            }
            std::sort(pairs.begin(), pairs.end());
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (k > 0 && pairs[k].first == pairs[k - 1].first)
                    throw ParseError(fname + ":" + std::to_string(lineno) +
                                     ": duplicate feature index");
                g.features(static_cast<int>(id), pairs[k].first) = pairs[k].second;
            }
        }
        if (seen != static_cast<std::size_t>(g.num_nodes))
            throw ConsistencyError(fname + ": " + std::to_string(seen) +
                                   " node lines but meta.json declares " +
                                   std::to_string(g.num_nodes));
    }

    // edges.tsv: <src>\t<dst>, undirected
    std::vector<std::pair<std::pair<int, int>, double>> triplets;
    {
        std::ifstream in(edges_path);
        if (!in) throw LoadError("cannot open " + edges_path.string());
        const std::string fname = edges_path.string();
        std::vector<std::pair<int, int>> pairs;
        std::string line;
        std::size_t lineno = 0;
        LoadStats local;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const char* p = line.c_str();
            const long src = detail::parse_int(p, fname, lineno);
            detail::expect_tab(p, fname, lineno);
            const long dst = detail::parse_int(p, fname, lineno);
            if (src < 0 || src >= g.num_nodes || dst < 0 || dst >= g.num_nodes)
                throw ParseError(fname + ":" + std::to_string(lineno) + ": endpoint out of range");
            if (src == dst) {
                ++local.self_loops_dropped;
                continue;
            }
            pairs.emplace_back(std::min(src, dst), std::max(src, dst));
        }
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (k > 0 && pairs[k] == pairs[k - 1]) {
                ++local.duplicate_edges_dropped;
                continue;
            }
            triplets.push_back({{pairs[k].first, pairs[k].second}, 1.0});
            triplets.push_back({{pairs[k].second, pairs[k].first}, 1.0});
        }
        if (stats) *stats = local;
    }
    g.adjacency = csr_from_triplets(g.num_nodes, g.num_nodes, std::move(triplets));
    g.rebuild_feature_rows();
    return g;
}

}  // namespace gral
