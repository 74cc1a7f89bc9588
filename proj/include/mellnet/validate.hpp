#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mellnet/net.hpp"

namespace mellnet {

struct SwitchingFailure {
    int gs = 0;
    int depth = 0;
    // chosen premise per switched link: (link id, kept premise edge)
    std::vector<std::pair<std::string, std::string>> choice;
    std::vector<std::string> cycle;  // link ids around the cycle
};

struct ValidationReport {
    bool valid = true;
    long long acyclic_switchings = 0;  // across all levels
    std::vector<SwitchingFailure> failures;
};

namespace detail {

struct SwitchSlot {
    int link;                         // index of the par/why link
    std::vector<std::string> options; // premise edges, one to keep
};

// Undirected acyclicity for one complete choice; on a cycle, reconstructs the
// link-id path through the partially built forest.
inline bool switching_acyclic(const Net& n, int g,
                              const std::vector<std::pair<std::string, std::string>>& kept_extra,
                              std::vector<std::string>* cycle_out) {
    const GS& gs = n.gss[g];
    size_t m = gs.links.size();
    std::vector<int> uf(m);
    for (size_t i = 0; i < m; i++) uf[i] = (int)i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::vector<std::vector<int>> adj(m);

    auto add_edge = [&](int u, int v) -> bool {
        int ru = find(u), rv = find(v);
        if (ru == rv) {
            if (cycle_out) {
                // path u..v through adj, then closing edge
                std::vector<int> prev(m, -1), stack = {u};
                std::vector<char> seen(m, 0);
                seen[u] = 1;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    if (x == v) break;
                    for (int y : adj[x])
                        if (!seen[y]) {
                            seen[y] = 1;
                            prev[y] = x;
                            stack.push_back(y);
                        }
                }
                std::vector<std::string> path;
                for (int x = v; x != -1; x = prev[x]) path.push_back(gs.links[x].id);
                std::reverse(path.begin(), path.end());
                *cycle_out = std::move(path);
            }
            return false;
        }
        uf[ru] = rv;
        adj[u].push_back(v);
        adj[v].push_back(u);
        return true;
    };

    // premises that survive this switching
    std::map<std::string, bool> keep;
    for (const auto& [lid, e] : kept_extra) keep[e] = true;

    for (size_t i = 0; i < m; i++) {
        const Link& l = gs.links[i];
        bool switched = l.kind == LinkKind::Par || (l.kind == LinkKind::Why && !l.prem.empty());
        for (const std::string& e : l.prem) {
            if (switched && !keep.count(e)) continue;
            auto s = n.src_of(g, e);
            if (!add_edge(s->link, (int)i)) return false;
        }
    }
    return true;
}

} // namespace detail

// Enumerates every switching of every level and checks undirected
// acyclicity.  Exhaustive by construction; nets of interest keep the product
// of choices small.
inline ValidationReport validate_net(const Net& n) {
    ValidationReport rep;
    for (size_t g = 0; g < n.gss.size(); g++) {
        const GS& gs = n.gss[g];
        std::vector<detail::SwitchSlot> slots;
        long long count = 1;
        for (size_t i = 0; i < gs.links.size(); i++) {
            const Link& l = gs.links[i];
            if (l.kind == LinkKind::Par || (l.kind == LinkKind::Why && !l.prem.empty())) {
                slots.push_back({(int)i, l.prem});
                count *= (long long)l.prem.size();
                if (count > (1LL << 22))
                    throw NetError("switching enumeration too large at level " +
                                   std::to_string(g));
            }
        }
        std::vector<size_t> pick(slots.size(), 0);
        for (;;) {
            std::vector<std::pair<std::string, std::string>> choice;
            for (size_t s = 0; s < slots.size(); s++)
                choice.push_back({gs.links[slots[s].link].id, slots[s].options[pick[s]]});
            std::vector<std::string> cycle;
            if (detail::switching_acyclic(n, (int)g, choice, &cycle)) {
                rep.acyclic_switchings++;
            } else {
                rep.valid = false;
                SwitchingFailure f;
                f.gs = (int)g;
                f.depth = n.depth_of_gs((int)g);
                f.choice = std::move(choice);
                f.cycle = std::move(cycle);
                rep.failures.push_back(std::move(f));
            }
            // odometer
            size_t s = 0;
            for (; s < slots.size(); s++) {
                if (++pick[s] < slots[s].options.size()) break;
                pick[s] = 0;
            }
            if (s == slots.size()) break;
        }
    }
    return rep;
}

inline bool is_valid(const Net& n) { return validate_net(n).valid; }

} // namespace mellnet
