#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mellnet/interp.hpp"
#include "mellnet/rewrite.hpp"

namespace mellnet {

// Predicting reduction lengths from interpretations.
//
// The pipeline: interpret two cut-free nets, look for pairs of points that
// are dual on the chosen conclusions, and turn the sizes of those points into
// the exact length of the longest reduction sequence of the net obtained by
// cutting the two nets together.  All searches are budgeted; the driver
// grows the budget while the answer is inconclusive.

// ---------------------------------------------------------------------------
// Cutting two nets together

namespace detail {

// Emits the links of one level with every edge name of that level prefixed.
// Box internals have their own namespaces and are printed untouched; only
// the aux side of a box map belongs to this level.
inline void emit_prefixed_links(const Net& n, int g, const std::string& pre, std::string& out) {
    auto px = [&](const std::string& e) { return pre + e; };
    for (const Link& l : n.gss[g].links) {
        if (l.kind == LinkKind::Pin) continue;
        out += "\n  (";
        out += kind_name(l.kind);
        switch (l.kind) {
            case LinkKind::Ax:
            case LinkKind::One:
            case LinkKind::Bot:
                for (const std::string& e : l.concl) { out += ' '; out += px(e); }
                break;
            case LinkKind::Cut:
                for (const std::string& e : l.prem) { out += ' '; out += px(e); }
                break;
            case LinkKind::Tensor:
            case LinkKind::Par:
            case LinkKind::Flat:
            case LinkKind::Why:
                for (const std::string& e : l.prem) { out += ' '; out += px(e); }
                out += " -> ";
                out += px(l.concl[0]);
                break;
            case LinkKind::Bang: {
                out += " -> ";
                out += px(l.concl[0]);
                if (l.concl.size() > 1) {
                    out += " (aux";
                    for (size_t i = 1; i < l.concl.size(); i++) { out += ' '; out += px(l.concl[i]); }
                    out += ')';
                }
                const BoxRef& ref = n.box(g, l.id);
                out += "\n    (box ";
                print_gs(n, ref.gs, out, 4);
                out += ")";
                if (!ref.aux2box.empty()) {
                    out += "\n    (map";
                    for (const auto& [a, b] : ref.aux2box) {
                        out += " (";
                        out += px(a);
                        out += " = ";
                        out += b;
                        out += ')';
                    }
                    out += ')';
                }
                break;
            }
            case LinkKind::Pin:
                break;
        }
        out += ')';
    }
}

} // namespace detail

// The net obtained by cutting conclusion cl of l against conclusion cr of r.
// Ground edges of the left net are prefixed "l_", those of the right "r_",
// so the two halves cannot collide; the surviving conclusions keep their
// order, left ones first.
inline Net make_cut_net(const Net& l, const std::string& cl,
                        const Net& r, const std::string& cr) {
    auto has_concl = [](const Net& n, const std::string& c) {
        const auto& cs = n.gss[0].concls;
        return std::find(cs.begin(), cs.end(), c) != cs.end();
    };
    if (!has_concl(l, cl)) throw NetError("make_cut_net: the left net has no conclusion " + cl);
    if (!has_concl(r, cr)) throw NetError("make_cut_net: the right net has no conclusion " + cr);
    std::string out = "(net (concl";
    for (const std::string& c : l.gss[0].concls)
        if (c != cl) { out += " l_"; out += c; }
    for (const std::string& c : r.gss[0].concls)
        if (c != cr) { out += " r_"; out += c; }
    out += ")";
    detail::emit_prefixed_links(l, 0, "l_", out);
    detail::emit_prefixed_links(r, 0, "r_", out);
    out += "\n  (cut l_" + cl + " r_" + cr + "))";
    return parse_net(out);
}

// ---------------------------------------------------------------------------
// Smallest experiment within a budget

// An experiment of minimal s' (experiment size plus twice the number of
// weakening labels), found by iterative deepening on the size cap so that
// small experiments are returned without exploring the whole budget.  s' is
// fixed by an experiment's box cardinalities and weakening choices alone, so
// the first nonempty stage already contains a global minimum for the budget.
// Ties break on the serialized experiment.
inline std::optional<Experiment> min_sbis_experiment(const Net& n, const Budget& b,
                                                     bool* truncated = nullptr) {
    if (truncated) *truncated = false;
    long long cap = std::min<long long>(8, b.max_total_sbis);
    for (;;) {
        Budget stage = b;
        stage.max_total_sbis = cap;
        bool tr = false;
        std::vector<Experiment> found = enumerate_experiments(n, ExpMode::SmBis, false, stage, &tr);
        if (truncated && tr) *truncated = true;
        if (!found.empty()) {
            size_t best = 0;
            long long best_s = exp_sbis(n, 0, found[0]);
            std::string best_key = exp_show(found[0]);
            for (size_t i = 1; i < found.size(); i++) {
                long long s = exp_sbis(n, 0, found[i]);
                std::string key = exp_show(found[i]);
                if (s < best_s || (s == best_s && key < best_key)) {
                    best = i;
                    best_s = s;
                    best_key = std::move(key);
                }
            }
            return found[best];
        }
        if (cap >= b.max_total_sbis) return std::nullopt;
        cap = std::min<long long>(cap * 2, b.max_total_sbis);
    }
}

// ---------------------------------------------------------------------------
// Qualitative check: does any pair of points survive the cut?

struct SnWitness {
    InterpPoint z;   // point of the left interpretation
    InterpPoint z2;  // point of the right interpretation
    Subst sigma;     // unifier making the cut components dual
};

// The cut of two strongly normalizable cut-free nets is strongly
// normalizable exactly when some pair of interpretation points is unifiable
// to dual values on the cut conclusions.  Returns the witness whose
// serialized pair is smallest, for determinism.
inline std::optional<SnWitness> semantic_sn_check(const std::vector<InterpPoint>& I, size_t ci,
                                                  const std::vector<InterpPoint>& I2, size_t ci2) {
    std::optional<SnWitness> best;
    long long best_sbis = 0;
    std::string best_key;
    for (const InterpPoint& z : I) {
        if (ci >= z.result.size()) throw NetError("semantic_sn_check: cut component out of range");
        for (const InterpPoint& z2 : I2) {
            if (ci2 >= z2.result.size())
                throw NetError("semantic_sn_check: cut component out of range");
            std::vector<Subst> sols = unify_dual(z.result[ci], z2.result[ci2]);
            if (sols.empty()) continue;
            long long sbis = z.s_bis + z2.s_bis;
            std::string key = show(z) + " " + show(z2);
            if (!best || sbis < best_sbis || (sbis == best_sbis && key < best_key)) {
                best = SnWitness{z, z2, sols.front()};
                best_sbis = sbis;
                best_key = std::move(key);
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Quantitative prediction

// The longest-reduction length of the cut net, from the two interpretations
// and the size infimum of the composed interpretation:
//
//     min over matching pairs of
//         (s'(z,W) + s'(z',W') - sinf) / 2  -  s(W + W')
//
// Individual pairs may give half-integers, so the minimum is taken over
// doubled values; only the final minimum must be even, and an odd or
// negative minimum signals an internal inconsistency.  Among pairs attaining
// the minimum the one with the smallest serialization wins, and its unifier
// is reported through witness.
inline std::optional<long long> predict_strong_length(const std::vector<InterpPoint>& I, size_t ci,
                                                      const std::vector<InterpPoint>& I2, size_t ci2,
                                                      long long sinf,
                                                      SnWitness* witness = nullptr) {
    bool any = false;
    long long best2 = 0;
    std::string best_key;
    SnWitness best_wit;
    for (const InterpPoint& z : I) {
        if (ci >= z.result.size())
            throw NetError("predict_strong_length: cut component out of range");
        for (const InterpPoint& z2 : I2) {
            if (ci2 >= z2.result.size())
                throw NetError("predict_strong_length: cut component out of range");
            std::vector<Subst> sols = unify_dual(z.result[ci], z2.result[ci2]);
            if (sols.empty()) continue;
            std::vector<Point> wsum = z.w;
            wsum.insert(wsum.end(), z2.w.begin(), z2.w.end());
            long long doubled = (z.s_bis + z2.s_bis - sinf) - 2 * point_size(wsum);
            std::string key = show(z) + " " + show(z2);
            if (!any || doubled < best2 || (doubled == best2 && key < best_key)) {
                any = true;
                best2 = doubled;
                best_key = std::move(key);
                best_wit = SnWitness{z, z2, sols.front()};
            }
        }
    }
    if (!any) return std::nullopt;
    if (best2 < 0 || best2 % 2 != 0)
        throw NetError("predicted doubled length " + std::to_string(best2) +
                       " is not an even nonnegative number");
    if (witness) *witness = best_wit;
    return best2 / 2;
}

// ---------------------------------------------------------------------------
// Phase lengths of the canonical sequence, from semantics

// Length of the longest stratified non-erasing phase: half the gap between
// the size of the smallest experiment of n and the size infimum of its
// interpretation.  none when the budget yields no experiment at all.
inline std::optional<long long> nonerasing_length_from_semantics(const Net& n, const Budget& b) {
    std::optional<Experiment> e0 = min_sbis_experiment(n, b);
    if (!e0) return std::nullopt;
    std::optional<long long> sinf = sbis_inf(smbis_slice(n, b, false));
    if (!sinf)
        throw NetError("an experiment exists but the interpretation slice is empty");
    long long diff = exp_size(n, 0, *e0) - *sinf;
    if (diff < 0 || diff % 2 != 0)
        throw NetError("non-erasing length numerator " + std::to_string(diff) +
                       " is not an even nonnegative number");
    return diff / 2;
}

// Number of cuts of a net whose cuts are all erasing, read off the weakening
// labels of its smallest experiment.  The count is cross-checked against the
// syntactic cut count; a mismatch means the semantics went wrong.
inline long long erasing_cut_count(const Net& n, const Budget& b) {
    if (!ne_normal(n))
        throw NetError("erasing_cut_count needs a net whose cuts are all erasing");
    std::optional<Experiment> e0 = min_sbis_experiment(n, b);
    if (!e0)
        throw NetError("no experiment found within budget while counting erasing cuts");
    long long card = (long long)exp_weakening(n, 0, *e0).size();
    long long cuts = (long long)classify_cuts(n).size();
    if (card != cuts)
        throw NetError("weakening count " + std::to_string(card) +
                       " disagrees with the syntactic cut count " + std::to_string(cuts));
    return card;
}

// ---------------------------------------------------------------------------
// End-to-end driver

enum class PredictStatus : uint8_t { SN, NotSNWithinBudget, Inconclusive };

inline const char* predict_status_name(PredictStatus s) {
    switch (s) {
        case PredictStatus::SN: return "SN";
        case PredictStatus::NotSNWithinBudget: return "NotSN_within_budget";
        case PredictStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct Prediction {
    PredictStatus status = PredictStatus::Inconclusive;
    std::optional<long long> predicted_strong;
    std::optional<long long> nonerasing_part;
    std::optional<long long> erasing_part;
    std::optional<SnWitness> witness;
    Budget budget_used;
};

// Predicts the longest-reduction length of the cut of two cut-free nets from
// their interpretations.  The size infimum of the composed interpretation is
// computed twice - semantically, and as the size of the non-erasing normal
// form - and the two must agree.  On an empty composition or a disagreement
// the budget grows (the size cap doubles up to hard_cap, box cardinalities
// inch up); once the ladder is exhausted the answer is NotSN_within_budget
// when every search ran to completion and Inconclusive when some search was
// cut short.  Nets that already contain cuts are not accepted: their lengths
// come from the syntactic side directly.
inline Prediction predict(const Net& l, const std::string& cl,
                          const Net& r, const std::string& cr,
                          Budget budget = Budget{}, long long hard_cap = 256) {
    if (!cut_free(l) || !cut_free(r))
        throw NetError("predict needs cut-free nets; reduce nets with cuts directly instead");
    auto concl_index = [](const Net& n, const std::string& c) -> size_t {
        const auto& cs = n.gss[0].concls;
        auto it = std::find(cs.begin(), cs.end(), c);
        if (it == cs.end()) throw NetError("predict: no conclusion " + c);
        return (size_t)(it - cs.begin());
    };
    size_t ci = concl_index(l, cl);
    size_t ci2 = concl_index(r, cr);
    Net cut_net = make_cut_net(l, cl, r, cr);

    constexpr int kCopyCap = 6;
    auto can_grow = [&](const Budget& b) {
        return b.max_total_sbis < hard_cap || b.max_copies_per_box < kCopyCap;
    };
    auto grow = [&](Budget& b) {
        b.max_total_sbis = std::min(hard_cap, b.max_total_sbis * 2);
        b.max_copies_per_box = std::min(kCopyCap, b.max_copies_per_box + 1);
    };

    Prediction out;
    for (;;) {
        out.budget_used = budget;
        bool truncated = false;
        std::vector<InterpPoint> I = smbis_slice(l, budget, false, &truncated);
        for (InterpPoint& p : I) p = prefix_atoms(p, "l");
        std::vector<InterpPoint> I2 = smbis_slice(r, budget, false, &truncated);
        for (InterpPoint& p : I2) p = prefix_atoms(p, "r");
        std::vector<InterpPoint> composed = compose_interpretations(I, ci, I2, ci2, &truncated);
        if (composed.empty()) {
            if (can_grow(budget)) { grow(budget); continue; }
            out.status =
                truncated ? PredictStatus::Inconclusive : PredictStatus::NotSNWithinBudget;
            return out;
        }
        long long sinf_sem = *sbis_inf(composed);

        // Syntactic route to the same infimum: the size of the non-erasing
        // normal form.  A clash there contradicts the composition being
        // nonempty; fuel running out leaves the check unresolved.
        NormalizeResult norm = normalize(cut_net, Strategy::StratifiedNonErasing);
        if (norm.terminal == Terminal::FuelExhausted) {
            out.status = PredictStatus::Inconclusive;
            return out;
        }
        if (norm.terminal == Terminal::ClashBlocked)
            throw NetError("interpretations compose but reduction reaches a clash");
        long long sinf_syn = net_size(norm.end);
        if (sinf_sem != sinf_syn) {
            if (can_grow(budget)) { grow(budget); continue; }
            throw NetError("size infimum mismatch: interpretations give " +
                           std::to_string(sinf_sem) + ", the non-erasing normal form gives " +
                           std::to_string(sinf_syn));
        }

        SnWitness wit;
        std::optional<long long> predicted =
            predict_strong_length(I, ci, I2, ci2, sinf_sem, &wit);
        // composed is nonempty, so a matching pair exists
        long long erasing = erasing_cut_count(norm.end, budget);
        long long nonerasing = *predicted - erasing;

        // Independent route to the non-erasing part, through the cut net's
        // own experiments; disagreement means the budget clipped a minimum.
        std::optional<long long> ne_sem = nonerasing_length_from_semantics(cut_net, budget);
        if (ne_sem && *ne_sem != nonerasing) {
            if (can_grow(budget)) { grow(budget); continue; }
            throw NetError("non-erasing length mismatch: prediction gives " +
                           std::to_string(nonerasing) + ", the cut net's experiments give " +
                           std::to_string(*ne_sem));
        }

        out.status = PredictStatus::SN;
        out.predicted_strong = predicted;
        out.nonerasing_part = nonerasing;
        out.erasing_part = erasing;
        out.witness = wit;
        return out;
    }
}

} // namespace mellnet
