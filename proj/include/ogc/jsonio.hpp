#ifndef OGC_JSONIO_HPP
#define OGC_JSONIO_HPP

#include <json.hpp>

#include "ogc/generators.hpp"
#include "ogc/halfedge.hpp"
#include "ogc/signs.hpp"

namespace ogc {

using nlohmann::json;

/// Graph-exchange record:
/// { half_edges: [ids], involution: [[a,b],...], vertex_of: {"id": vertex},
///   decoration: {...}, orientation: {vertex_order, edge_directions | forest_order} }
inline json graph_to_json(const HalfEdgeGraph& g, const Decoration& d, const Orientation& o) {
    json j;
    j["half_edges"] = json::array();
    for (int h = 0; h < g.num_half_edges(); ++h) j["half_edges"].push_back(h);
    j["involution"] = json::array();
    for (int h : g.edge_reps()) j["involution"].push_back(json::array({h, g.inv[h]}));
    j["vertex_of"] = json::object();
    for (int h = 0; h < g.num_half_edges(); ++h) j["vertex_of"][std::to_string(h)] = g.vat[h];
    json deco = json::object();
    if (d.has_rot()) deco["cyclic_next"] = d.rot;
    if (d.has_forest()) {
        json f = json::array();
        for (int h : d.forest_edge_reps(g)) f.push_back(h);
        deco["forest_edges"] = f;
    }
    if (d.has_label()) deco["labels"] = d.label;
    j["decoration"] = deco;
    json ori = json::object();
    if (!o.forest_order.empty()) {
        ori["forest_order"] = o.forest_order;
    } else {
        ori["vertex_order"] = o.vertex_order;
        ori["edge_directions"] = o.edge_init;
    }
    j["orientation"] = ori;
    return j;
}

inline json generator_to_json(const GeneratorKey& key) {
    json j = graph_to_json(key.graph, key.deco, Orientation::reference(key.graph, key.deco));
    j["variant"] = variant_name(key.variant);
    return j;
}

inline void json_to_graph(const json& j, HalfEdgeGraph& g, Decoration& d, Orientation& o) {
    int H = static_cast<int>(j.at("half_edges").size());
    g.inv.assign(H, -1);
    g.vat.assign(H, -1);
    for (const auto& pair : j.at("involution")) {
        int a = pair.at(0), b = pair.at(1);
        g.inv[a] = b;
        g.inv[b] = a;
    }
    int nv = 0;
    for (auto& [hs, v] : j.at("vertex_of").items()) {
        int h = std::stoi(hs);
        g.vat[h] = v;
        nv = std::max(nv, static_cast<int>(v) + 1);
    }
    g.nv = nv;
    g.validate();
    d = Decoration{};
    if (j.contains("decoration")) {
        const auto& deco = j.at("decoration");
        if (deco.contains("cyclic_next")) d.rot = deco.at("cyclic_next").get<std::vector<int>>();
        if (deco.contains("forest_edges")) {
            d.forest.assign(H, 0);
            for (int e : deco.at("forest_edges")) d.forest[e] = d.forest[g.inv[e]] = 1;
        }
        if (deco.contains("labels")) d.label = deco.at("labels").get<std::vector<int>>();
        d.validate(g);
    }
    o = Orientation::reference(g, d);
    if (j.contains("orientation")) {
        const auto& ori = j.at("orientation");
        if (ori.contains("forest_order")) o.forest_order = ori.at("forest_order").get<std::vector<int>>();
        if (ori.contains("vertex_order")) o.vertex_order = ori.at("vertex_order").get<std::vector<int>>();
        if (ori.contains("edge_directions")) o.edge_init = ori.at("edge_directions").get<std::vector<int>>();
    }
}

/// Basis manifest: index -> generator record.
inline json basis_to_json(const std::vector<GeneratorKey>& basis) {
    json j = json::array();
    for (const auto& k : basis) j.push_back(generator_to_json(k));
    return j;
}

/// FNV-1a hash of a canonical JSON dump; embedded in reports for reproducibility.
inline std::string config_hash(const json& j) {
    std::string s = j.dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", h);
    return std::string(buf);
}

} // namespace ogc

#endif
