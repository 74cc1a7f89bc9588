#include <catch2/catch_amalgamated.hpp>

#include "mellnet/interp.hpp"
#include "mellnet/rewrite.hpp"
#include "nets.hpp"

using namespace mellnet;

namespace {

const char* AX_NET = "(net (concl a b) (ax a b))";
const char* AX_CUT = "(net (concl a d) (ax a b) (ax c d) (cut b c))";
const char* LONE_ONE = "(net (concl c) (one c))";
const char* LONE_BOT = "(net (concl c) (bot c))";
const char* LONE_WEAK = "(net (concl w) (why -> w))";
const char* TENSOR_OF_AX = "(net (concl t) (ax a b) (tensor a b -> t))";
const char* BARE_BANG = "(net (concl m) (bang -> m (box (net (concl c) (one c)))))";
const char* BOXED_WEAK = "(net (concl m) (bang -> m (box (net (concl w) (why -> w)))))";
const char* BOT_BOX_ERASE =
    "(net (concl) (bang -> m (box (net (concl c) (bot c)))) (why -> u) (cut m u))";
const char* AX_OVER_BOT = "(net (concl p) (ax p a) (bot z) (cut a z))";

Point pt(const std::string& s) { return parse_point(s); }

std::vector<Point> pts(std::initializer_list<const char*> xs) {
    std::vector<Point> out;
    for (const char* x : xs) out.push_back(pt(x));
    return out;
}

} // namespace

TEST_CASE("interpretation points serialize with their size") {
    InterpPoint p = make_interp(pts({"(+ *)"}), pts({"(- *)"}));
    CHECK(p.s_bis == 1 + (1 + 2));
    CHECK(show(p) == "(point (result (+ *)) (w (- *)) (sbis 4))");
}

TEST_CASE("canonical renaming maps atoms onto a fixed alphabet") {
    auto r = canonical_atoms(pts({"(+ zz)", "(- zz)"}));
    CHECK(r == pts({"(+ r0)", "(- r0)"}));

    // the choice among bijections minimizes the serialized form
    auto two = canonical_atoms(pts({"(- q)", "(+ b)", "(+ q)"}));
    CHECK(two == pts({"(- r0)", "(+ r1)", "(+ r0)"}));

    InterpPoint p = canonical_atoms(make_interp(pts({"(+ k9)"}), pts({"(- k9)"})));
    CHECK(p.result == pts({"(+ r0)"}));
    CHECK(p.w == pts({"(- r0)"}));
}

TEST_CASE("slices compare equal across fresh-name choices") {
    Net n = parse_net(AX_NET);
    auto key1 = canonical_slice_key(sm_slice(n, Budget{}));
    std::vector<std::vector<Point>> renamed = {pts({"(+ other)", "(- other)"})};
    CHECK(key1 == canonical_slice_key(renamed));
}

TEST_CASE("unit interpretations") {
    CHECK(sm_slice(parse_net(LONE_ONE), Budget{}) ==
          std::vector<std::vector<Point>>{pts({"(+ *)"})});
    CHECK(sm_slice(parse_net(LONE_BOT), Budget{}) ==
          std::vector<std::vector<Point>>{pts({"(- *)"})});
    auto smbis = smbis_slice(parse_net(LONE_ONE), Budget{});
    REQUIRE(smbis.size() == 1);
    CHECK(smbis[0].result == pts({"(+ *)"}));
    CHECK(smbis[0].w.empty());
    CHECK(smbis[0].s_bis == 1);
}

TEST_CASE("sbis_inf returns the least size and infinity on empty slices") {
    CHECK_FALSE(sbis_inf({}).has_value());
    auto slice = smbis_slice(parse_net(LONE_WEAK), Budget{});
    REQUIRE(slice.size() == 2);
    CHECK(sbis_inf(slice) == 1);

    // an erased-box normal form: least size equals the net size
    Net n = parse_net(BOT_BOX_ERASE);
    auto erased = smbis_slice(n, Budget{});
    REQUIRE(erased.size() == 1);
    CHECK(erased[0].result.empty());
    CHECK(erased[0].w == pts({"(+ *)"}));
    CHECK(sbis_inf(erased) == net_size(n));
}

TEST_CASE("the expansion copies structure and blossoms empty negative bags") {
    Budget b;

    auto star = expand_F_point(pt("(+ *)"), b);
    REQUIRE(star.size() == 1);
    CHECK(star[0].y == pt("(+ *)"));
    CHECK(star[0].w.empty());

    auto weak = expand_F_point(pt("(- (bag))"), b);
    REQUIRE(weak.size() == 2);
    CHECK(weak[0].y == pt("(- (bag))"));
    CHECK(weak[0].w.empty());
    CHECK(weak[1].y == pt("(- (bag (+ *)))"));
    CHECK(weak[1].w == pts({"(+ *)"}));

    auto full = expand_F_point(pt("(- (bag (+ *)))"), b);
    REQUIRE(full.size() == 1);
    CHECK(full[0].y == pt("(- (bag (+ *)))"));
    CHECK(full[0].w.empty());

    CHECK_THROWS_AS(expand_F(pts({"(+ (bag))"}), b), NetError);

    auto vec = expand_F(pts({"(- (bag))"}), b);
    REQUIRE(vec.size() == 2);
    CHECK(vec[0].result == pts({"(- (bag))"}));
    CHECK(vec[0].w.empty());
    CHECK(vec[1].result == pts({"(- (bag (+ *)))"}));
    CHECK(vec[1].w == pts({"(+ *)"}));
}

TEST_CASE("atomic part drops instances reachable from other members") {
    std::vector<std::vector<Point>> E = {pts({"(+ gamma)", "(- gamma)"}),
                                         pts({"(+ *)", "(- *)"})};
    auto at = atomic_part(E);
    REQUIRE(at.size() == 1);
    CHECK(at[0] == pts({"(+ gamma)", "(- gamma)"}));

    // nothing maps onto anything else: everything stays
    std::vector<std::vector<Point>> indep = {pts({"(+ *)"}), pts({"(- *)"})};
    CHECK(atomic_part(indep).size() == 2);
}

TEST_CASE("smbis reconstruction agrees with direct enumeration on cut-free nets") {
    Budget b;
    b.max_total_sbis = 255;  // keep the cap from biting either side
    for (const char* t : {LONE_ONE, LONE_BOT, LONE_WEAK, AX_NET, TENSOR_OF_AX, BARE_BANG,
                          BOXED_WEAK}) {
        Net n = parse_net(t);
        auto direct = smbis_slice(n, b);
        auto rebuilt = smbis_from_sm(sm_slice(n, b), b);
        INFO(t);
        CHECK(canonical_slice_key(direct) == canonical_slice_key(rebuilt));
    }
}

TEST_CASE("explicit substitutions enlarge the reconstruction") {
    Budget b;
    Net n = parse_net(AX_NET);
    auto base = smbis_from_sm(sm_slice(n, b), b);
    REQUIRE(base.size() == 1);
    Subst s;
    std::set<std::string> atoms;
    collect_atoms(base[0].result, atoms);
    REQUIRE(atoms.size() == 1);
    s.bind[*atoms.begin()] = pt("(+ *)");
    auto closed = smbis_from_sm(sm_slice(n, b), b, {s});
    REQUIRE(closed.size() == 2);
    bool has_star = false;
    for (const InterpPoint& p : closed)
        if (p.result == pts({"(+ *)", "(- *)"})) has_star = true;
    CHECK(has_star);
}

TEST_CASE("composition over a cut unifies the chosen components") {
    auto one = smbis_slice(parse_net(LONE_ONE), Budget{});
    auto bot = smbis_slice(parse_net(LONE_BOT), Budget{});
    auto composed = compose_interpretations(one, 0, bot, 0);
    REQUIRE(composed.size() == 1);
    CHECK(composed[0].result.empty());
    CHECK(composed[0].w.empty());
    CHECK(composed[0].s_bis == 0);

    // mismatched components compose to nothing
    CHECK(compose_interpretations(one, 0, one, 0).empty());

    // axiom against axiom: atoms chain through the cut
    std::vector<InterpPoint> ax;
    for (const InterpPoint& p : smbis_slice(parse_net(AX_NET), Budget{}))
        ax.push_back(prefix_atoms(p, "L"));
    std::vector<InterpPoint> ax2;
    for (const InterpPoint& p : smbis_slice(parse_net(AX_NET), Budget{}))
        ax2.push_back(prefix_atoms(p, "R"));
    auto chained = compose_interpretations(ax, 1, ax2, 0);
    REQUIRE(chained.size() == 1);
    REQUIRE(chained[0].result.size() == 2);
    CHECK(chained[0].result[0] == dual(chained[0].result[1]));
    CHECK(chained[0].result[0].tag == Point::Tag::Atom);
    CHECK(chained[0].s_bis == 2);
}

TEST_CASE("interpretation slices are invariant across single reduction steps") {
    // ax-merge, unit cut, and a dereliction: generic slices agree before/after
    for (const char* t : {AX_CUT, AX_OVER_BOT,
                          "(net (concl) (one a) (bot b) (cut a b))"}) {
        Net n = parse_net(t);
        auto cuts = classify_cuts(n);
        REQUIRE_FALSE(cuts.empty());
        auto [next, step] = reduce_cut(n, cuts[0].path);
        INFO(t);
        CHECK(canonical_slice_key(sm_slice(n, Budget{}, /*atomic=*/false)) ==
              canonical_slice_key(sm_slice(next, Budget{}, /*atomic=*/false)));
        CHECK(canonical_slice_key(smbis_slice(n, Budget{}, /*atomic=*/false)) ==
              canonical_slice_key(smbis_slice(next, Budget{}, /*atomic=*/false)));
    }
}

TEST_CASE("an erasing step changes the weakening-aware interpretation") {
    Net n = parse_net(BOT_BOX_ERASE);
    auto cuts = classify_cuts(n);
    REQUIRE(cuts.size() == 1);
    REQUIRE(cuts[0].erasing);
    auto [next, step] = reduce_cut(n, cuts[0].path);

    // the plain interpretation survives erasure...
    CHECK(canonical_slice_key(sm_slice(n, Budget{}, false)) ==
          canonical_slice_key(sm_slice(next, Budget{}, false)));
    // ...but the weakening-aware one shrinks: the erased box leaves no trace
    auto before = smbis_slice(n, Budget{}, false);
    auto after = smbis_slice(next, Budget{}, false);
    REQUIRE(before.size() == 1);
    REQUIRE(after.size() == 1);
    CHECK(before[0].w == pts({"(+ *)"}));
    CHECK(after[0].w.empty());
    CHECK(canonical_slice_key(before) != canonical_slice_key(after));
}

TEST_CASE("size bound for cut-free nets") {
    // s(e) <= s(|e|) - s(W(e)) for every enumerated smbis experiment
    Budget b;
    b.max_total_sbis = 255;
    for (const char* t : {AX_NET, LONE_ONE, LONE_WEAK, TENSOR_OF_AX, BARE_BANG, BOXED_WEAK}) {
        Net n = parse_net(t);
        for (const Experiment& e : enumerate_experiments(n, ExpMode::SmBis, true, b)) {
            auto result = exp_result(n, e);
            auto w = exp_weakening(n, 0, e);
            INFO(t);
            CHECK(exp_size(n, 0, e) <= point_size(result) - point_size(w));
        }
    }
}
