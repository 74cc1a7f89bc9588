#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <climits>

#include "mellnet/canonical.hpp"
#include "mellnet/predict.hpp"
#include "mellnet/strong.hpp"
#include "mellnet/validate.hpp"
#include "nets.hpp"

using namespace mellnet;

namespace {

const char* AX_NET = "(net (concl a b) (ax a b))";
const char* AX_CUT = "(net (concl a d) (ax a b) (ax c d) (cut b c))";
const char* LONE_ONE = "(net (concl c) (one c))";
const char* LONE_BOT = "(net (concl c) (bot c))";
const char* LONE_WEAK = "(net (concl w) (why -> w))";
const char* ONE_BOT_CUT = "(net (concl) (one a) (bot b) (cut a b))";
const char* TENSOR_OF_AX = "(net (concl t) (ax a b) (tensor a b -> t))";
const char* BARE_BANG = "(net (concl m) (bang -> m (box (net (concl c) (one c)))))";
const char* BOXED_WEAK = "(net (concl m) (bang -> m (box (net (concl w) (why -> w)))))";
const char* BANG_ONE_ERASE =
    "(net (concl) (bang -> m (box (net (concl c) (one c)))) (why -> u) (cut m u))";
const char* BOT_BOX_ERASE =
    "(net (concl) (bang -> m (box (net (concl c) (bot c)))) (why -> u) (cut m u))";
const char* NESTED_BOT_ERASERS =
    "(net (concl)"
    " (bang -> m1 (box (net (concl c)"
    "   (bot c)"
    "   (bang -> m2 (box (net (concl c2) (bot c2))))"
    "   (why -> u2)"
    "   (cut m2 u2))))"
    " (why -> u1)"
    " (cut m1 u1))";
const char* DERELICT =
    "(net (concl) (bang -> m (box (net (concl c) (one c)))) (bot z) (flat z -> s)"
    " (why s -> u) (cut m u))";
const char* DERELICT_SIDE = "(net (concl u) (bot z) (flat z -> s) (why s -> u))";
const char* TENSOR_SIDE = "(net (concl a t) (ax a b) (one o) (tensor b o -> t))";
const char* PAR_SIDE = "(net (concl x p) (ax x y) (bot z) (par y z -> p))";
const char* BOXED_FLAT_AUX =
    "(net (concl m u)"
    " (bang -> m (aux fx)"
    "   (box (net (concl c s) (ax c d) (flat d -> s)))"
    "   (map (fx = s)))"
    " (why fx -> u))";

Point pt(const std::string& s) { return parse_point(s); }

std::vector<Point> pts(std::initializer_list<const char*> xs) {
    std::vector<Point> out;
    for (const char* x : xs) out.push_back(pt(x));
    return out;
}

// Default candidates plus negative-star bags, so labels dual to one-element
// and two-element box bags over Bot-free boxes become reachable.
Budget wide_budget() {
    Budget b;
    b.weakening_candidates.push_back(Point::bag(Pol::Minus, {Point::star(Pol::Minus)}));
    b.weakening_candidates.push_back(
        Point::bag(Pol::Minus, {Point::star(Pol::Minus), Point::star(Pol::Minus)}));
    return b;
}

std::vector<InterpPoint> side_slice(const char* text, const std::string& prefix,
                                    Budget b = Budget{}) {
    std::vector<InterpPoint> out = smbis_slice(parse_net(text), b, false);
    for (InterpPoint& p : out) p = prefix_atoms(p, prefix);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// make_cut_net

TEST_CASE("make_cut_net joins two nets on the chosen conclusions") {
    Net one = parse_net(LONE_ONE);
    Net bot = parse_net(LONE_BOT);
    Net cn = make_cut_net(one, "c", bot, "c");
    CHECK(is_valid(cn));
    CHECK(cn.gss[0].concls.empty());
    auto cuts = classify_cuts(cn);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].cls == CutClass::OneBot);
    CHECK(net_size(cn) == 2);
}

TEST_CASE("make_cut_net keeps the remaining conclusions in order, left first") {
    Net ax = parse_net(AX_NET);
    Net cn = make_cut_net(ax, "b", ax, "a");
    CHECK(is_valid(cn));
    CHECK(cn.gss[0].concls == std::vector<std::string>{"l_a", "r_b"});
    CHECK(net_size(cn) == 4);
    REQUIRE(classify_cuts(cn).size() == 1);
    CHECK(classify_cuts(cn)[0].cls == CutClass::Ax);
}

TEST_CASE("make_cut_net rebuilds boxed nets, including aux doors and maps") {
    Net bb = parse_net(BARE_BANG);
    Net lw = parse_net(LONE_WEAK);
    Net cn = make_cut_net(bb, "m", lw, "w");
    CHECK(nets_isomorphic(cn, parse_net(BANG_ONE_ERASE)));

    Net withaux = make_cut_net(parse_net(BOXED_FLAT_AUX), "u", bb, "m");
    CHECK(is_valid(withaux));
    CHECK(classify_cuts(withaux).size() == 1);
    CHECK(net_size(withaux) == 6);
    // the printed form of the merge parses back to the same net
    CHECK(nets_isomorphic(withaux, parse_net(print_net(withaux))));
}

TEST_CASE("make_cut_net rejects unknown conclusions") {
    Net one = parse_net(LONE_ONE);
    CHECK_THROWS_AS(make_cut_net(one, "nope", one, "c"), NetError);
    CHECK_THROWS_AS(make_cut_net(one, "c", one, "nope"), NetError);
}

// ---------------------------------------------------------------------------
// min_sbis_experiment

TEST_CASE("the smallest experiment of a weakening-free cut-free net has the net's size") {
    for (const char* t : {AX_NET, LONE_ONE, TENSOR_OF_AX, TENSOR_SIDE, PAR_SIDE}) {
        Net n = parse_net(t);
        auto e0 = min_sbis_experiment(n, Budget{});
        REQUIRE(e0.has_value());
        CHECK(exp_sbis(n, 0, *e0) == net_size(n));
        CHECK(exp_weakening(n, 0, *e0).empty());
    }
}

TEST_CASE("the smallest experiment spares weakenings where it can") {
    Net lw = parse_net(LONE_WEAK);
    auto e0 = min_sbis_experiment(lw, Budget{});
    REQUIRE(e0.has_value());
    CHECK(exp_sbis(lw, 0, *e0) == 1);
    CHECK(exp_weakening(lw, 0, *e0).empty());

    // across a cut-facing weakening the label is forced, and one box copy
    // is the cheapest
    Net er = parse_net(BOT_BOX_ERASE);
    auto f0 = min_sbis_experiment(er, Budget{});
    REQUIRE(f0.has_value());
    CHECK(exp_size(er, 0, *f0) == net_size(er));
    CHECK(exp_sbis(er, 0, *f0) == 5);
    CHECK(exp_weakening(er, 0, *f0).size() == 1);

    Net two = parse_net(NESTED_BOT_ERASERS);
    auto g0 = min_sbis_experiment(two, Budget{});
    REQUIRE(g0.has_value());
    CHECK(exp_size(two, 0, *g0) == net_size(two));
    CHECK(exp_sbis(two, 0, *g0) == 10);
    CHECK(exp_weakening(two, 0, *g0).size() == 2);
}

TEST_CASE("smallest experiments of cut-bearing nets account for the cut") {
    Net n = parse_net(AX_CUT);
    auto e0 = min_sbis_experiment(n, Budget{});
    REQUIRE(e0.has_value());
    CHECK(exp_sbis(n, 0, *e0) == 4);

    Net d = parse_net(DERELICT);
    auto f0 = min_sbis_experiment(d, Budget{});
    REQUIRE(f0.has_value());
    CHECK(exp_sbis(d, 0, *f0) == 4);
}

TEST_CASE("nets without experiments yield none at every budget stage") {
    CHECK_FALSE(min_sbis_experiment(parse_net(fixtures::OKADA), Budget{}).has_value());
    CHECK_FALSE(min_sbis_experiment(parse_net(fixtures::PI_PRIME), Budget{}).has_value());
}

// ---------------------------------------------------------------------------
// semantic_sn_check

TEST_CASE("dual units pass the compatibility check") {
    auto w = semantic_sn_check(side_slice(LONE_ONE, "l"), 0, side_slice(LONE_BOT, "r"), 0);
    REQUIRE(w.has_value());
    CHECK(w->z.result == pts({"(+ *)"}));
    CHECK(w->z2.result == pts({"(- *)"}));
}

TEST_CASE("equal units fail the compatibility check") {
    CHECK_FALSE(
        semantic_sn_check(side_slice(LONE_ONE, "l"), 0, side_slice(LONE_ONE, "r"), 0).has_value());
}

TEST_CASE("a bang against a bare weakening needs a rich enough label set") {
    auto I = side_slice(BARE_BANG, "l");
    CHECK_FALSE(semantic_sn_check(I, 0, side_slice(LONE_WEAK, "r"), 0).has_value());
    auto w = semantic_sn_check(I, 0, side_slice(LONE_WEAK, "r", wide_budget()), 0);
    REQUIRE(w.has_value());
    CHECK(w->z.result == pts({"(+ (bag (+ *)))"}));
    CHECK(w->z2.result == pts({"(- (bag (- *)))"}));
}

// ---------------------------------------------------------------------------
// predict_strong_length

TEST_CASE("one against bot predicts a single step") {
    auto I = side_slice(LONE_ONE, "l");
    auto I2 = side_slice(LONE_BOT, "r");
    auto composed = compose_interpretations(I, 0, I2, 0);
    REQUIRE(composed.size() == 1);
    REQUIRE(sbis_inf(composed) == 0);
    CHECK(predict_strong_length(I, 0, I2, 0, 0) == 1);
}

TEST_CASE("an axiom cut against an axiom predicts a single step") {
    auto I = side_slice(AX_NET, "l");
    auto I2 = side_slice(AX_NET, "r");
    auto composed = compose_interpretations(I, 1, I2, 0);
    REQUIRE(sbis_inf(composed) == 2);
    CHECK(predict_strong_length(I, 1, I2, 0, 2) == 1);
}

TEST_CASE("two hand-written points are enough to predict six steps") {
    // a two-conclusion point whose second component faces the cut
    InterpPoint z = make_interp(
        pts({"(- (bag (+ *) (+ *)))",
             "(+ (bag (- (bag (+ (bag (- *))))) (- (bag (+ (bag (- *)))))))"}),
        {});
    CHECK(z.s_bis == 10);
    // a one-conclusion point carrying one weakening label
    InterpPoint z2 = make_interp(
        pts({"(- (bag (+ (bag (- (bag (+ *))))) (+ (bag (- (bag (+ *)))))))"}), pts({"(+ *)"}));
    CHECK(z2.s_bis == 10);

    std::vector<InterpPoint> I{z}, I2{z2};
    REQUIRE(semantic_sn_check(I, 1, I2, 0).has_value());
    auto composed = compose_interpretations(I, 1, I2, 0);
    REQUIRE(sbis_inf(composed) == 6);
    SnWitness wit;
    CHECK(predict_strong_length(I, 1, I2, 0, 6, &wit) == 6);
    CHECK(wit.z.s_bis == 10);
    CHECK(wit.z2.s_bis == 10);
}

TEST_CASE("non-minimal pairs may sit at half-integers without spoiling the minimum") {
    // one box copy matches the one-element weakening label, two copies the
    // two-element one; the second pair's doubled value is odd (5) and loses
    // to the first pair's even 2
    auto I = side_slice(BARE_BANG, "l");
    auto I2 = side_slice(LONE_WEAK, "r", wide_budget());
    auto composed = compose_interpretations(I, 0, I2, 0);
    REQUIRE(sbis_inf(composed) == 3);
    SnWitness wit;
    CHECK(predict_strong_length(I, 0, I2, 0, 3, &wit) == 1);
    CHECK(wit.z.result == pts({"(+ (bag (+ *)))"}));
}

TEST_CASE("an odd or negative minimum aborts loudly") {
    std::vector<InterpPoint> I{make_interp(pts({"(+ *)"}), {})};
    std::vector<InterpPoint> I2{make_interp(pts({"(- *)"}), {})};
    CHECK(predict_strong_length(I, 0, I2, 0, 0) == 1);
    CHECK_THROWS_AS(predict_strong_length(I, 0, I2, 0, 1), NetError);
    CHECK_THROWS_AS(predict_strong_length(I, 0, I2, 0, 4), NetError);
}

TEST_CASE("no matching pair means no prediction") {
    CHECK_FALSE(
        predict_strong_length(side_slice(LONE_ONE, "l"), 0, side_slice(LONE_ONE, "r"), 0, 0)
            .has_value());
}

// ---------------------------------------------------------------------------
// Phase lengths

TEST_CASE("the non-erasing phase length falls out of experiment sizes") {
    CHECK(nonerasing_length_from_semantics(parse_net(AX_CUT), Budget{}) == 1);
    CHECK(nonerasing_length_from_semantics(parse_net(ONE_BOT_CUT), Budget{}) == 1);
    CHECK(nonerasing_length_from_semantics(parse_net(DERELICT), Budget{}) == 2);
    CHECK_FALSE(
        nonerasing_length_from_semantics(parse_net(fixtures::OKADA), Budget{}).has_value());
}

TEST_CASE("nets whose cuts all erase have non-erasing phase zero") {
    CHECK(nonerasing_length_from_semantics(parse_net(BOT_BOX_ERASE), Budget{}) == 0);
    CHECK(nonerasing_length_from_semantics(parse_net(NESTED_BOT_ERASERS), Budget{}) == 0);
}

TEST_CASE("erasing cuts are counted by the weakening labels of the smallest experiment") {
    CHECK(erasing_cut_count(parse_net(LONE_ONE), Budget{}) == 0);
    CHECK(erasing_cut_count(parse_net(BOT_BOX_ERASE), Budget{}) == 1);
    CHECK(erasing_cut_count(parse_net(NESTED_BOT_ERASERS), Budget{}) == 2);
    CHECK_THROWS_AS(erasing_cut_count(parse_net(AX_CUT), Budget{}), NetError);
    CHECK_THROWS_AS(erasing_cut_count(parse_net(DERELICT), Budget{}), NetError);
}

// ---------------------------------------------------------------------------
// End-to-end prediction

TEST_CASE("predict rejects nets that already contain cuts") {
    Net one = parse_net(LONE_ONE);
    CHECK_THROWS_AS(predict(parse_net(AX_CUT), "a", one, "c"), NetError);
}

TEST_CASE("predicted lengths match the longest-reduction oracle on small pairs") {
    struct Case {
        const char* left;
        const char* cl;
        const char* right;
        const char* cr;
        long long strong, keep, erase;
        Budget budget;
    };
    std::vector<Case> cases = {
        {LONE_ONE, "c", LONE_BOT, "c", 1, 1, 0, Budget{}},
        {AX_NET, "b", AX_NET, "a", 1, 1, 0, Budget{}},
        {TENSOR_SIDE, "t", PAR_SIDE, "p", 3, 3, 0, Budget{}},
        {BARE_BANG, "m", DERELICT_SIDE, "u", 2, 2, 0, Budget{}},
        {BARE_BANG, "m", LONE_WEAK, "w", 1, 0, 1, wide_budget()},
    };
    for (const Case& c : cases) {
        INFO(c.left << " cut " << c.right);
        Net ln = parse_net(c.left), rn = parse_net(c.right);
        Prediction p = predict(ln, c.cl, rn, c.cr, c.budget);
        REQUIRE(p.status == PredictStatus::SN);
        REQUIRE(p.predicted_strong.has_value());
        CHECK(*p.predicted_strong == c.strong);
        CHECK(*p.nonerasing_part == c.keep);
        CHECK(*p.erasing_part == c.erase);
        CHECK(*p.predicted_strong == *p.nonerasing_part + *p.erasing_part);
        CHECK(p.witness.has_value());

        LengthOutcome oracle =
            strong_length(make_cut_net(ln, c.cl, rn, c.cr), StrongMode::AllSteps);
        REQUIRE(oracle.status == LengthOutcome::Status::SN);
        CHECK(oracle.max_len == *p.predicted_strong);
    }
}

TEST_CASE("a clashing pair composes to nothing") {
    Net one = parse_net(LONE_ONE);
    Prediction p = predict(one, "c", one, "c");
    CHECK(p.status == PredictStatus::NotSNWithinBudget);
    CHECK_FALSE(p.predicted_strong.has_value());
    CHECK_FALSE(p.witness.has_value());

    LengthOutcome oracle = strong_length(make_cut_net(one, "c", one, "c"), StrongMode::AllSteps);
    CHECK(oracle.status == LengthOutcome::Status::NotSN);
    CHECK(oracle.reason == "clash");
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("one non-erasing step shrinks the smallest experiment by exactly two") {
    for (const char* t : {AX_CUT, DERELICT, ONE_BOT_CUT}) {
        Net n = parse_net(t);
        auto cuts = classify_cuts(n);
        REQUIRE_FALSE(cuts.empty());
        Net after = reduce_cut(n, cuts[0].path).first;

        auto before_min = min_sbis_experiment(n, Budget{});
        auto after_min = min_sbis_experiment(after, Budget{});
        REQUIRE(before_min.has_value());
        REQUIRE(after_min.has_value());
        CHECK(exp_sbis(n, 0, *before_min) - exp_sbis(after, 0, *after_min) == 2);

        // the step leaves the reading of the experiment unchanged
        InterpPoint b = canonical_atoms(interp_of_experiment(n, *before_min));
        InterpPoint a = canonical_atoms(interp_of_experiment(after, *after_min));
        CHECK(b == a);
    }
}

TEST_CASE("point sizes over the slice reproduce minimal experiment sizes") {
    for (const char* t : {AX_NET, LONE_WEAK, BARE_BANG, BOXED_WEAK, TENSOR_OF_AX}) {
        INFO(t);
        Net n = parse_net(t);
        Budget b;
        b.max_total_sbis = 255;
        auto exps = enumerate_experiments(n, ExpMode::SmBis, false, b);
        REQUIRE_FALSE(exps.empty());

        std::vector<InterpPoint> slice;
        for (const Experiment& e : exps) slice.push_back(interp_of_experiment(n, e));
        std::sort(slice.begin(), slice.end());
        slice.erase(std::unique(slice.begin(), slice.end()), slice.end());

        for (const InterpPoint& target : slice) {
            long long lhs = LLONG_MAX;
            for (const Experiment& e : exps)
                if (interp_of_experiment(n, e) == target)
                    lhs = std::min(lhs, exp_sbis(n, 0, e));

            // keep pattern and target atom namespaces apart: the matcher
            // pins target atoms, and the existence of a substitution is
            // unchanged by renaming either side
            InterpPoint tgt_r = prefix_atoms(target, "t");
            long long rhs = LLONG_MAX;
            for (const InterpPoint& z0 : slice) {
                InterpPoint z = prefix_atoms(z0, "p");
                std::vector<Point> pat = z.result;
                pat.insert(pat.end(), z.w.begin(), z.w.end());
                // the weakening side is a multiset: try every arrangement
                std::vector<Point> wperm = tgt_r.w;
                std::sort(wperm.begin(), wperm.end());
                bool hit = false;
                do {
                    std::vector<Point> tgt = tgt_r.result;
                    tgt.insert(tgt.end(), wperm.begin(), wperm.end());
                    if (!match_points(pat, tgt).empty()) hit = true;
                } while (!hit && std::next_permutation(wperm.begin(), wperm.end()));
                if (hit)
                    rhs = std::min(rhs, point_size(z.result) - point_size(z.w) +
                                            2 * (long long)z.w.size());
            }
            CHECK(lhs == rhs);
        }
    }
}
