#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mellnet/net.hpp"

namespace mellnet {

// Canonical forms for nets up to renaming of edges, links and levels.
// Ground conclusions keep their order; box interfaces are matched through the
// aux pairing, not through textual order.

namespace detail {

struct ColoredGraph {
    std::vector<std::string> seed;                       // initial node color
    std::vector<std::tuple<int, int, std::string>> arcs; // src, dst, label
};

inline ColoredGraph net_graph(const Net& n) {
    ColoredGraph g;
    // node ids: per level, one node per link and one per edge name
    std::map<std::pair<int, std::string>, int> link_node, edge_node;
    for (size_t lv = 0; lv < n.gss.size(); lv++) {
        const GS& gs = n.gss[lv];
        std::set<std::string> edges;
        for (const Link& l : gs.links) {
            edges.insert(l.prem.begin(), l.prem.end());
            edges.insert(l.concl.begin(), l.concl.end());
        }
        for (const std::string& e : edges) {
            edge_node[{(int)lv, e}] = (int)g.seed.size();
            g.seed.push_back("E");
        }
        for (const Link& l : gs.links) {
            std::string seed = kind_name(l.kind);
            if (l.kind == LinkKind::Pin) {
                auto it = std::find(gs.concls.begin(), gs.concls.end(), l.prem[0]);
                size_t pos = (size_t)(it - gs.concls.begin());
                if (lv == 0) {
                    seed = "gpin" + std::to_string(pos);
                } else {
                    seed = edge_is_structural(n, (int)lv, l.prem[0]) ? "spin" : "mpin";
                }
            }
            link_node[{(int)lv, l.id}] = (int)g.seed.size();
            g.seed.push_back(seed);
        }
    }
    auto port_in = [](const Link& l, size_t i) -> std::string {
        switch (l.kind) {
            case LinkKind::Tensor:
            case LinkKind::Par: return "p" + std::to_string(i);
            default: return "p";
        }
    };
    auto port_out = [](const Link& l, size_t i) -> std::string {
        if (l.kind == LinkKind::Bang) return i == 0 ? "m" : "a";
        if (l.kind == LinkKind::Ax) return "c";
        return "c" + std::to_string(i);
    };
    for (size_t lv = 0; lv < n.gss.size(); lv++) {
        for (const Link& l : n.gss[lv].links) {
            int ln = link_node.at({(int)lv, l.id});
            for (size_t i = 0; i < l.prem.size(); i++)
                g.arcs.push_back({edge_node.at({(int)lv, l.prem[i]}), ln, port_in(l, i)});
            for (size_t i = 0; i < l.concl.size(); i++)
                g.arcs.push_back({ln, edge_node.at({(int)lv, l.concl[i]}), port_out(l, i)});
        }
    }
    for (const auto& [key, ref] : n.boxes) {
        int bn = link_node.at({key.first, key.second});
        for (const Link& l : n.gss[ref.gs].links) {
            if (l.kind != LinkKind::Pin) continue;
            int pn = link_node.at({ref.gs, l.id});
            g.arcs.push_back({bn, pn, "box"});
        }
        for (const auto& [aux, bedge] : ref.aux2box) {
            // pair the aux edge with the pin holding its box conclusion
            for (const Link& l : n.gss[ref.gs].links)
                if (l.kind == LinkKind::Pin && l.prem[0] == bedge)
                    g.arcs.push_back({edge_node.at({key.first, aux}),
                                      link_node.at({ref.gs, l.id}), "bind"});
        }
    }
    return g;
}

// color-refinement: repeatedly split classes by neighborhood signatures
inline std::vector<int> refine_colors(const ColoredGraph& g, std::vector<int> color) {
    size_t nn = g.seed.size();
    for (;;) {
        std::vector<std::vector<std::pair<std::string, int>>> outs(nn), ins(nn);
        for (const auto& [s, d, lab] : g.arcs) {
            outs[s].push_back({lab, color[d]});
            ins[d].push_back({lab, color[s]});
        }
        std::vector<std::tuple<int, std::vector<std::pair<std::string, int>>,
                               std::vector<std::pair<std::string, int>>>> sig(nn);
        for (size_t v = 0; v < nn; v++) {
            std::sort(outs[v].begin(), outs[v].end());
            std::sort(ins[v].begin(), ins[v].end());
            sig[v] = {color[v], outs[v], ins[v]};
        }
        std::vector<int> order(nn);
        for (size_t v = 0; v < nn; v++) order[v] = (int)v;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
        std::vector<int> nc(nn);
        int rank = 0;
        for (size_t i = 0; i < nn; i++) {
            if (i > 0 && sig[order[i]] != sig[order[i - 1]]) rank++;
            nc[order[i]] = rank;
        }
        if (nc == color) return color;
        color = std::move(nc);
    }
}

inline bool discrete(const std::vector<int>& color) {
    std::set<int> seen(color.begin(), color.end());
    return seen.size() == color.size();
}

inline std::string serialize_by_color(const ColoredGraph& g, const std::vector<int>& color) {
    size_t nn = g.seed.size();
    std::vector<int> pos(nn);
    for (size_t v = 0; v < nn; v++) pos[color[v]] = (int)v;
    std::string out;
    for (size_t r = 0; r < nn; r++) {
        int v = pos[r];
        out += g.seed[v];
        std::vector<std::string> lines;
        for (const auto& [s, d, lab] : g.arcs)
            if (s == v) lines.push_back(lab + ">" + std::to_string(color[d]));
        std::sort(lines.begin(), lines.end());
        for (const std::string& l : lines) out += "|" + l;
        out += ";";
    }
    return out;
}

inline void canon_search(const ColoredGraph& g, std::vector<int> color, std::string& best,
                         bool& have) {
    color = refine_colors(g, color);
    if (discrete(color)) {
        std::string s = serialize_by_color(g, color);
        if (!have || s < best) {
            best = std::move(s);
            have = true;
        }
        return;
    }
    // split the smallest non-singleton class, trying each member first
    std::map<int, std::vector<int>> classes;
    for (size_t v = 0; v < color.size(); v++) classes[color[v]].push_back((int)v);
    const std::vector<int>* target = nullptr;
    for (const auto& [c, vs] : classes)
        if (vs.size() > 1) {
            target = &vs;
            break;
        }
    for (int v : *target) {
        std::vector<int> nc(color.size());
        for (size_t u = 0; u < color.size(); u++) nc[u] = color[u] * 2 + 1;
        nc[v] = color[v] * 2;
        canon_search(g, nc, best, have);
    }
}

} // namespace detail

inline std::string canonical_form(const Net& n) {
    detail::ColoredGraph g = detail::net_graph(n);
    std::map<std::string, int> seed_rank;
    for (const std::string& s : g.seed) seed_rank[s] = 0;
    int r = 0;
    for (auto& [k, v] : seed_rank) v = r++;
    std::vector<int> color;
    for (const std::string& s : g.seed) color.push_back(seed_rank.at(s));
    std::string best;
    bool have = false;
    detail::canon_search(g, color, best, have);
    return best;
}

// Equality up to renaming, preserving the order of net conclusions.
inline bool nets_isomorphic(const Net& a, const Net& b) {
    return canonical_form(a) == canonical_form(b);
}

} // namespace mellnet
