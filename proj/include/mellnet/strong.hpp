#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mellnet/canonical.hpp"
#include "mellnet/rewrite.hpp"

namespace mellnet {

struct LengthOutcome {
    enum class Status : uint8_t { SN, NotSN, Unknown };
    Status status = Status::Unknown;
    long long max_len = -1;   // meaningful for SN
    std::string reason;       // NotSN: "cycle" | "clash"; Unknown: "fuel"
    long long cycle_len = -1; // meaningful for NotSN via cycle

    static LengthOutcome sn(long long len) { return {Status::SN, len, "", -1}; }
    static LengthOutcome cycle(long long len) { return {Status::NotSN, -1, "cycle", len}; }
    static LengthOutcome clash() { return {Status::NotSN, -1, "clash", -1}; }
    static LengthOutcome fuel() { return {Status::Unknown, -1, "fuel", -1}; }
};

enum class StrongMode : uint8_t { AllSteps, NonErasingOnly };

inline std::optional<StrongMode> strong_mode_from_name(const std::string& s) {
    if (s == "all_steps") return StrongMode::AllSteps;
    if (s == "nonerasing_only") return StrongMode::NonErasingOnly;
    return std::nullopt;
}

namespace detail {

struct StrongCtx {
    StrongMode mode;
    long long fuel;
    std::map<std::string, long long> exact; // canonical form -> longest length
    std::map<std::string, int> onpath;      // canonical form -> depth on current path
    std::map<std::string, int> limited;     // canonical form -> largest horizon that ran out
    LengthOutcome bad;
    bool failed = false;
};

inline std::vector<CutInfo> strong_eligible(const Net& n, StrongMode mode) {
    std::vector<CutInfo> out;
    for (const CutInfo& c : classify_cuts(n)) {
        if (c.cls == CutClass::Clash) continue;
        if (mode == StrongMode::NonErasingOnly && c.erasing) continue;
        out.push_back(c);
    }
    return out;
}

// Bounded exhaustive search.  Returns the exact longest reduction length from
// n, nullopt when the depth limit cut the search short, and flags ctx.failed
// for hard outcomes (reachable clash, repeated net, spent fuel).
inline std::optional<long long> strong_dfs(const Net& n, StrongCtx& cx, int depth, int limit) {
    if (has_clash(n)) {
        cx.bad = LengthOutcome::clash();
        cx.failed = true;
        return std::nullopt;
    }
    const std::string key = canonical_form(n);
    if (auto it = cx.exact.find(key); it != cx.exact.end()) return it->second;
    if (auto it = cx.onpath.find(key); it != cx.onpath.end()) {
        cx.bad = LengthOutcome::cycle(depth - it->second);
        cx.failed = true;
        return std::nullopt;
    }
    std::vector<CutInfo> elig = strong_eligible(n, cx.mode);
    if (elig.empty()) {
        cx.exact[key] = 0;
        return 0;
    }
    if (depth >= limit) return std::nullopt;
    // a state that already ran out of depth with at least this much headroom
    // cannot resolve now either; skip it instead of re-enumerating its paths
    if (auto it = cx.limited.find(key); it != cx.limited.end() && it->second >= limit - depth)
        return std::nullopt;
    cx.onpath[key] = depth;
    long long best = 0;
    bool limited = false;
    for (const CutInfo& c : elig) {
        if (cx.fuel-- <= 0) {
            cx.bad = LengthOutcome::fuel();
            cx.failed = true;
            cx.onpath.erase(key);
            return std::nullopt;
        }
        Net child = reduce_cut(n, c.path).first;
        auto r = strong_dfs(child, cx, depth + 1, limit);
        if (cx.failed) {
            cx.onpath.erase(key);
            return std::nullopt;
        }
        if (!r)
            limited = true;
        else
            best = std::max(best, 1 + *r);
    }
    cx.onpath.erase(key);
    if (limited) {
        int& h = cx.limited[key];
        h = std::max(h, limit - depth);
        return std::nullopt;
    }
    cx.exact[key] = best;
    return best;
}

} // namespace detail

// Longest reduction length over all eligible orders, by iterative deepening so
// that short cycles are caught even when other branches grow without bound.
inline LengthOutcome strong_length(const Net& n, StrongMode mode,
                                   long long fuel = 100000) {
    detail::StrongCtx cx;
    cx.mode = mode;
    cx.fuel = fuel;
    for (int limit = 1;; limit *= 2) {
        cx.onpath.clear();
        auto r = detail::strong_dfs(n, cx, 0, limit);
        if (cx.failed) return cx.bad;
        if (r) return LengthOutcome::sn(*r);
        if (cx.fuel <= 0) return LengthOutcome::fuel();
    }
}

// Two-phase run: exhaust cuts that keep content, then erase the rest.
struct CanonicalSequence {
    bool sn = false;
    LengthOutcome overall;  // the all-steps longest-length outcome
    NormalizeResult keep;   // shallowest-first steps without erasure
    NormalizeResult erase;  // deepest-first erasing steps on the remainder
};

inline CanonicalSequence canonical_sequence(const Net& n, long long fuel = 100000) {
    CanonicalSequence out;
    out.overall = strong_length(n, StrongMode::AllSteps, fuel);
    if (out.overall.status != LengthOutcome::Status::SN) return out;
    out.sn = true;
    out.keep = normalize(n, Strategy::StratifiedNonErasing, fuel);
    if (out.keep.terminal != Terminal::Normal && out.keep.terminal != Terminal::NeNormal)
        throw NetError("first phase of the canonical sequence did not converge");
    out.erase = normalize(out.keep.end, Strategy::AntistratifiedErasing, fuel);
    if (out.erase.terminal != Terminal::Normal)
        throw NetError("second phase of the canonical sequence did not converge");
    return out;
}

} // namespace mellnet
