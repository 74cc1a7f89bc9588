#include <catch2/catch_amalgamated.hpp>

#include "mellnet/canonical.hpp"
#include "mellnet/net.hpp"
#include "mellnet/rewrite.hpp"
#include "mellnet/strong.hpp"
#include "mellnet/validate.hpp"
#include "nets.hpp"

using namespace mellnet;

namespace {

const char* AX_CUT = "(net (concl a d) (ax a b) (ax c d) (cut b c))";
const char* ONE_BOT_CUT = "(net (concl) (one a) (bot b) (cut a b))";
const char* TENSOR_PAR_CUT =
    "(net (concl) (one o1) (one o2) (tensor o1 o2 -> t)"
    " (bot b1) (bot b2) (par b1 b2 -> p) (cut t p))";
const char* BANG_ONE_ERASE =
    "(net (concl) (bang -> m (box (net (concl c) (one c)))) (why -> u) (cut m u))";
const char* DERELICT =
    "(net (concl) (bang -> m (box (net (concl c) (one c))))"
    " (bot z) (flat z -> s) (why s -> u) (cut m u))";
const char* CLASH_ONE_ONE = "(net (concl) (one a) (one b) (cut a b))";
const char* NESTED_ERASERS =
    "(net (concl)"
    " (bang -> m1 (box (net (concl v) (one v)"
    "   (bang -> m2 (box (net (concl c) (one c)))) (why -> u2) (cut m2 u2))))"
    " (why -> u1) (cut m1 u1))";
const char* TWO_BANG_CONTRACTION =
    "(net (concl)"
    " (bang -> mO (box (net (concl c) (one c))))"
    " (bang -> mP (aux pa) (box (net (concl bv bs) (ax bv z) (flat z -> bs)))"
    "   (map (pa = bs)))"
    " (flat mP -> fs)"
    " (why pa fs -> u)"
    " (cut mO u))";
const char* NESTED_DERELICT =
    "(net (concl)"
    " (bang -> m1 (box (net (concl v) (one v)"
    "   (bang -> m2 (box (net (concl c) (one c)))) (why -> u2) (cut m2 u2))))"
    " (bot z) (flat z -> s) (why s -> u1) (cut m1 u1))";

// exhaustive tree walk without sharing: an independent answer for the longest
// reduction length of terminating clash-free nets
long long naive_strong(const Net& n, StrongMode mode, int cap) {
    REQUIRE_FALSE(has_clash(n));
    auto elig = detail::strong_eligible(n, mode);
    if (elig.empty()) return 0;
    REQUIRE(cap > 0);
    long long best = 0;
    for (const CutInfo& c : elig) {
        Net child = reduce_cut(n, c.path).first;
        best = std::max(best, 1 + naive_strong(child, mode, cap - 1));
    }
    return best;
}

} // namespace

TEST_CASE("longest lengths match an exhaustive enumeration") {
    struct Case {
        const char* txt;
        long long all;
        long long keep;  // without erasing steps
    };
    const Case cases[] = {
        {AX_CUT, 1, 1},        {ONE_BOT_CUT, 1, 1},    {TENSOR_PAR_CUT, 3, 3},
        {BANG_ONE_ERASE, 1, 0}, {DERELICT, 2, 2},      {NESTED_ERASERS, 2, 0},
        {NESTED_DERELICT, 3, 2},
    };
    for (const Case& c : cases) {
        INFO(c.txt);
        Net n = parse_net(c.txt);
        LengthOutcome all = strong_length(n, StrongMode::AllSteps);
        REQUIRE(all.status == LengthOutcome::Status::SN);
        CHECK(all.max_len == c.all);
        CHECK(all.max_len == naive_strong(n, StrongMode::AllSteps, 32));
        LengthOutcome keep = strong_length(n, StrongMode::NonErasingOnly);
        REQUIRE(keep.status == LengthOutcome::Status::SN);
        CHECK(keep.max_len == c.keep);
        CHECK(keep.max_len == naive_strong(n, StrongMode::NonErasingOnly, 32));
    }
}

TEST_CASE("reachable clashes rule out strong normalization") {
    LengthOutcome direct = strong_length(parse_net(CLASH_ONE_ONE), StrongMode::AllSteps);
    CHECK(direct.status == LengthOutcome::Status::NotSN);
    CHECK(direct.reason == "clash");

    // here the clash only appears after one substituting step
    LengthOutcome later = strong_length(parse_net(TWO_BANG_CONTRACTION), StrongMode::AllSteps);
    CHECK(later.status == LengthOutcome::Status::NotSN);
    CHECK(later.reason == "clash");
}

TEST_CASE("the looping net steps back to itself in two moves") {
    Net n = parse_net(fixtures::OKADA);
    REQUIRE(validate_net(n).valid);
    CHECK(net_size(n) == 9);
    CHECK(n.gss[0].concls.empty());

    auto cuts = classify_cuts(n);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].cls == CutClass::BangWhy);
    CHECK_FALSE(cuts[0].erasing);

    auto [mid, st1] = reduce_cut(n, "cut0");
    CHECK(net_size(mid) == 11);  // two copies of a four-sized box grow the net
    CHECK(validate_net(mid).valid);
    auto mid_cuts = classify_cuts(mid);
    REQUIRE(mid_cuts.size() == 2);
    CHECK(mid_cuts[0].path == "cut0:2");
    CHECK(mid_cuts[0].cls == CutClass::BangWhy);
    CHECK(mid_cuts[1].path == "bang1/cut0:1");
    CHECK(mid_cuts[1].cls == CutClass::Ax);
    CHECK_FALSE(nets_isomorphic(mid, n));

    Net back = reduce_cut(mid, "bang1/cut0:1").first;
    CHECK(net_size(back) == 9);
    CHECK(nets_isomorphic(back, n));
}

TEST_CASE("the looping net is reported as a cycle of length two") {
    Net n = parse_net(fixtures::OKADA);
    LengthOutcome out = strong_length(n, StrongMode::AllSteps, 1000);
    CHECK(out.status == LengthOutcome::Status::NotSN);
    CHECK(out.reason == "cycle");
    CHECK(out.cycle_len == 2);

    // the loop never erases, so it survives the keep-only mode too
    LengthOutcome keep = strong_length(n, StrongMode::NonErasingOnly, 1000);
    CHECK(keep.status == LengthOutcome::Status::NotSN);
    CHECK(keep.reason == "cycle");

    // a tiny budget cannot resolve the question
    LengthOutcome tiny = strong_length(n, StrongMode::AllSteps, 2);
    CHECK(tiny.status == LengthOutcome::Status::Unknown);
    CHECK(tiny.reason == "fuel");

    // eager strategies keep unfolding until fuel runs out
    NormalizeResult nr = normalize(n, Strategy::Any, 10);
    CHECK(nr.terminal == Terminal::FuelExhausted);
    CHECK(nr.steps.size() == 10);
}

TEST_CASE("boxing the loop gives a normalizable net without bounded reductions") {
    Net n = parse_net(fixtures::PI_PRIME);
    REQUIRE(validate_net(n).valid);

    NormalizeResult nr = normalize(n, Strategy::Any);
    CHECK(nr.terminal == Terminal::Normal);
    CHECK(nr.steps.size() == 1);
    CHECK(nr.steps[0].erasing);
    CHECK(nets_isomorphic(nr.end, parse_net("(net (concl c) (one c))")));

    LengthOutcome out = strong_length(n, StrongMode::AllSteps, 1000);
    CHECK(out.status == LengthOutcome::Status::NotSN);
    CHECK(out.reason == "cycle");
    CHECK(out.cycle_len == 2);
}

TEST_CASE("two-phase sequences sum to the longest length") {
    struct Case {
        const char* txt;
        long long keep;
        long long erase;
    };
    const Case cases[] = {
        {AX_CUT, 1, 0},          {TENSOR_PAR_CUT, 3, 0}, {BANG_ONE_ERASE, 0, 1},
        {DERELICT, 2, 0},        {NESTED_ERASERS, 0, 2}, {NESTED_DERELICT, 2, 1},
    };
    for (const Case& c : cases) {
        INFO(c.txt);
        Net n = parse_net(c.txt);
        CanonicalSequence cs = canonical_sequence(n);
        REQUIRE(cs.sn);
        CHECK((long long)cs.keep.steps.size() == c.keep);
        CHECK((long long)cs.erase.steps.size() == c.erase);
        CHECK((long long)(cs.keep.steps.size() + cs.erase.steps.size()) ==
              cs.overall.max_len);
        // the erasing phase fires once per remaining cut
        CHECK(cs.erase.steps.size() == classify_cuts(cs.keep.end).size());
        for (const TraceStep& s : cs.erase.steps) CHECK(s.erasing);
        CHECK(cut_free(cs.erase.end));
    }

    CanonicalSequence loop = canonical_sequence(parse_net(fixtures::OKADA));
    CHECK_FALSE(loop.sn);
    CHECK(loop.overall.reason == "cycle");
}
