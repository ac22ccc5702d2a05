#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/motzkin.hpp"
#include "mapforge/scheme.hpp"

using namespace mapforge;

namespace Catch {
template <>
struct StringMaker<mapforge::TruncatedSeries> {
    static std::string convert(const mapforge::TruncatedSeries& s) { return s.to_string(); }
};
}  // namespace Catch

namespace {

struct ErrorCodeIs : Catch::Matchers::MatcherBase<MapError> {
    ErrorCode expected;
    explicit ErrorCodeIs(ErrorCode c) : expected(c) {}
    bool match(const MapError& e) const override { return e.code() == expected; }
    std::string describe() const override {
        return std::string("has error code ") + to_string(expected);
    }
};

// Genus-1 scheme: a triple edge between two 4-valent vertices, one bud and
// one leaf.
const std::string kTheta =
    "darts 8\n"
    "sigma (1 2 7 4)(3 8 5 6)\n"
    "alpha (2 6)(3 7)(4 8)\n"
    "stems (1,bud) (5,leaf)\n"
    "rootbud 1\n";

TruncatedSeries tvar(int order, int idx) {
    return TruncatedSeries::variable(motzkin_variables(), order, idx);
}
TruncatedSeries tconst(int order, const Rat& c) {
    return TruncatedSeries::constant(motzkin_variables(), order, c);
}

}  // namespace

TEST_CASE("truncated series arithmetic") {
    const std::vector<std::string> xy{"x", "y"};
    auto x = TruncatedSeries::variable(xy, 3, 0);
    auto y = TruncatedSeries::variable(xy, 3, 1);
    auto one = TruncatedSeries::constant(xy, 3, 1);

    SECTION("products, sums, and coefficient access") {
        auto p = (one + x) * (one + y);
        REQUIRE(p.coefficient({0, 0}) == 1);
        REQUIRE(p.coefficient({1, 0}) == 1);
        REQUIRE(p.coefficient({0, 1}) == 1);
        REQUIRE(p.coefficient({1, 1}) == 1);
        REQUIRE(p.coefficient({2, 0}) == 0);
        REQUIRE(p.terms().size() == 4);
        REQUIRE((p - p).is_zero());
        REQUIRE((-p + p).is_zero());
        REQUIRE(p.to_string() == "1 + x + y + x*y");
    }

    SECTION("multiplication truncates at the total degree") {
        auto p = power(one + x, 5);
        REQUIRE(p.coefficient({2, 0}) == 10);
        REQUIRE(p.coefficient({3, 0}) == 10);
        REQUIRE(p.order() == 3);
        for (const auto& [e, c] : p.terms()) REQUIRE(TruncatedSeries::degree_of(e) <= 3);
    }

    SECTION("valuation and zero handling") {
        REQUIRE(TruncatedSeries(xy, 3).valuation() == 4);
        REQUIRE(TruncatedSeries(xy, 3).to_string() == "0");
        REQUIRE((x * y).valuation() == 2);
        REQUIRE(one.valuation() == 0);
        auto z = x - x;
        REQUIRE(z.is_zero());
        REQUIRE(z.terms().empty());
    }

    SECTION("printing is ordered by degree") {
        auto s = x - Rat(2) * y + Rat(3) * x * y - one;
        REQUIRE(s.to_string() == "-1 + x - 2*y + 3*x*y");
    }

    SECTION("swapping variable roles") {
        auto s = x + Rat(2) * y + x * x;
        auto t = s.swapped(0, 1);
        REQUIRE(t.to_string() == "2*x + y + y^2");
        REQUIRE(t.swapped(0, 1) == s);
        REQUIRE((x * y).swapped(0, 1) == x * y);
    }

    SECTION("truncating to a smaller order") {
        auto p = power(one + x, 3);
        auto q = p.truncated(1);
        REQUIRE(q.order() == 1);
        REQUIRE(q.coefficient({1, 0}) == 3);
        REQUIRE_THROWS_MATCHES(p.truncated(4), MapError, ErrorCodeIs(ErrorCode::BadInterval));
    }

    SECTION("substitution composes series") {
        const std::vector<std::string> zv{"z"};
        auto z = TruncatedSeries::variable(zv, 4, 0);
        auto f = x + x * y;  // f(x,y) = x + xy
        auto g = f.substituted({z + z * z, z});
        REQUIRE(g.coefficient({1}) == 1);
        REQUIRE(g.coefficient({2}) == 2);
        REQUIRE(g.coefficient({3}) == 1);
        REQUIRE(g.coefficient({4}) == 0);
        auto w = TruncatedSeries::constant(zv, 4, 1);
        REQUIRE_THROWS_MATCHES(f.substituted({w, z}), MapError,
                               ErrorCodeIs(ErrorCode::NonContracting));
    }

    SECTION("incompatible operands are rejected") {
        auto other_order = TruncatedSeries::variable(xy, 4, 0);
        REQUIRE_THROWS_MATCHES(x + other_order, MapError, ErrorCodeIs(ErrorCode::DomainError));
        auto other_vars = TruncatedSeries::variable({"x", "z"}, 3, 0);
        REQUIRE_THROWS_MATCHES(x * other_vars, MapError, ErrorCodeIs(ErrorCode::DomainError));
        REQUIRE_THROWS_MATCHES(x.coefficient({1}), MapError, ErrorCodeIs(ErrorCode::DomainError));
        REQUIRE_THROWS_MATCHES(TruncatedSeries(xy, -1), MapError,
                               ErrorCodeIs(ErrorCode::BadInterval));
        REQUIRE_THROWS_MATCHES(TruncatedSeries({}, 2), MapError,
                               ErrorCodeIs(ErrorCode::DomainError));
        REQUIRE_THROWS_MATCHES(power(x, -1), MapError, ErrorCodeIs(ErrorCode::DomainError));
        REQUIRE_THROWS_MATCHES(x.swapped(0, 2), MapError, ErrorCodeIs(ErrorCode::DomainError));
    }

    SECTION("fixed points of contracting systems") {
        const std::vector<std::string> zv{"z"};
        auto z = TruncatedSeries::variable(zv, 6, 0);
        auto cat = solve_fixed_point(
            [&](const std::vector<TruncatedSeries>& s) {
                return std::vector<TruncatedSeries>{z + s[0] * s[0]};
            },
            zv, 6, 1);
        REQUIRE(cat.size() == 1);
        std::vector<Rat> catalan{0, 1, 1, 2, 5, 14, 42};
        for (int k = 0; k <= 6; ++k) REQUIRE(cat[0].coefficient({k}) == catalan[k]);

        REQUIRE_THROWS_MATCHES(solve_fixed_point(
                                   [&](const std::vector<TruncatedSeries>& s) {
                                       return std::vector<TruncatedSeries>{z + s[0]};
                                   },
                                   zv, 6, 1),
                               MapError, ErrorCodeIs(ErrorCode::NonContracting));
        REQUIRE_THROWS_MATCHES(solve_fixed_point(
                                   [&](const std::vector<TruncatedSeries>& s) {
                                       return std::vector<TruncatedSeries>{
                                           TruncatedSeries::constant(zv, 6, 1) + s[0] * s[0]};
                                   },
                                   zv, 6, 1),
                               MapError, ErrorCodeIs(ErrorCode::NonContracting));
    }
}

TEST_CASE("walk weights follow step heights") {
    SECTION("structure helpers") {
        auto w = parse_walk(1, "ud");
        REQUIRE(w.length() == 2);
        REQUIRE(w.increment() == 0);
        REQUIRE(w.end_height() == 1);
        REQUIRE(w.heights() == std::vector<int>{1, 2, 1});
        REQUIRE(print_walk(parse_walk(2, "udhABCD")) == "udhABCD");
        REQUIRE(parse_walk(0, "") == MotzkinWalk{0, {}});
        REQUIRE_THROWS_MATCHES(parse_walk(0, "x"), MapError, ErrorCodeIs(ErrorCode::ParseError));
    }

    SECTION("the empty walk weighs one") {
        REQUIRE(walk_weight(parse_walk(3, "")) == WalkWeight{0, 0, 0});
        REQUIRE(walk_weight_series(parse_walk(3, ""), 4) == tconst(4, 1));
    }

    SECTION("a single horizontal step weighs 2(tb+tw) at every height") {
        for (int h : {-1, 0, 3}) {
            auto s = walk_weight_series(parse_walk(h, "h"), 4);
            REQUIRE(s == Rat(2) * tvar(4, 0) + Rat(2) * tvar(4, 1));
        }
    }

    SECTION("non-horizontal steps mark the parity of their height") {
        auto ud = walk_weight(parse_walk(0, "ud"));  // up at 0, down at 1
        REQUIRE(ud == WalkWeight{0, 1, 1});
        REQUIRE(walk_weight_series(parse_walk(0, "ud"), 4) == tvar(4, 0) * tvar(4, 1));

        REQUIRE(walk_weight(parse_walk(0, "udu")) == WalkWeight{0, 2, 1});
        REQUIRE(walk_weight(parse_walk(-1, "u")) == WalkWeight{0, 0, 1});

        auto huh = walk_weight(parse_walk(0, "huh"));
        REQUIRE(huh == WalkWeight{2, 1, 0});
        auto s = weight_series(huh, 4);
        REQUIRE(s.coefficient({3, 0}) == 4);
        REQUIRE(s.coefficient({2, 1}) == 8);
        REQUIRE(s.coefficient({1, 2}) == 4);
        REQUIRE(s.terms().size() == 3);
    }

    SECTION("weights ignore horizontal types") {
        REQUIRE(walk_weight(parse_walk(0, "AuB")) == walk_weight(parse_walk(0, "huh")));
    }

    SECTION("typed steps resolve to leaf colors") {
        REQUIRE(typed_leaf_colors(parse_walk(0, "u")) == std::pair<int, int>{1, 0});
        REQUIRE(typed_leaf_colors(parse_walk(1, "u")) == std::pair<int, int>{0, 1});
        REQUIRE(typed_leaf_colors(parse_walk(0, "uA")) == std::pair<int, int>{1, 1});
        REQUIRE(typed_leaf_colors(parse_walk(0, "B")) == std::pair<int, int>{1, 0});
        REQUIRE(typed_leaf_colors(parse_walk(0, "C")) == std::pair<int, int>{0, 1});
        REQUIRE(typed_leaf_colors(parse_walk(1, "C")) == std::pair<int, int>{1, 0});
        REQUIRE(typed_leaf_colors(parse_walk(1, "D")) == std::pair<int, int>{1, 0});
        REQUIRE_THROWS_MATCHES(typed_leaf_colors(parse_walk(0, "h")), MapError,
                               ErrorCodeIs(ErrorCode::DomainError));
    }

    SECTION("typed walks refine plain walks") {
        for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}) {
            TruncatedSeries acc(motzkin_variables(), 4);
            for_each_typed_walk(i, j, 4, [&](const MotzkinWalk& w) {
                auto [black, white] = typed_leaf_colors(w);
                acc.add_term({black, white}, 1);
            });
            REQUIRE(acc == series_W(i, j, 4));
        }
    }
}

TEST_CASE("walk series by direct enumeration") {
    SECTION("smallest cases are explicit") {
        REQUIRE(series_W(0, 0, 0) == tconst(0, 1));
        REQUIRE(series_W(0, 1, 1) == tvar(1, 0));
        REQUIRE(series_W(1, 2, 1) == tvar(1, 1));
        REQUIRE(series_W(1, 0, 1) == tvar(1, 1));
        REQUIRE(series_W(0, 3, 2).is_zero());
    }

    SECTION("the empty bridge contributes the constant term") {
        auto b = series_B(6);
        REQUIRE(b.coefficient({0, 0}) == 1);
        REQUIRE(series_W(0, 0, 6).coefficient({0, 0}) == 1);
    }

    SECTION("bridges from any level agree") {
        auto b = series_B(8);
        for (int k : {-2, -1, 1, 2, 3}) REQUIRE(series_W(k, k, 8) == b);
    }

    SECTION("low-order bridge coefficients") {
        auto b = series_B(2);
        REQUIRE(b.coefficient({1, 0}) == 2);
        REQUIRE(b.coefficient({0, 1}) == 2);
        REQUIRE(b.coefficient({2, 0}) == 4);
        REQUIRE(b.coefficient({1, 1}) == 10);
        REQUIRE(b.coefficient({0, 2}) == 4);
    }

    SECTION("low-order primitive walk coefficients") {
        auto d = series_D_bullet(3);
        TruncatedSeries want(motzkin_variables(), 3);
        want.add_term({1, 0}, 1);
        want.add_term({2, 0}, 2);
        want.add_term({1, 1}, 2);
        want.add_term({3, 0}, 4);
        want.add_term({2, 1}, 9);
        want.add_term({1, 2}, 4);
        REQUIRE(d == want);
    }

    SECTION("the white series is the first passage from height one") {
        REQUIRE(series_D_circ(8) == series_W_bounded(1, 0, 8, 1));
    }

    SECTION("first passages depend only on the parity of the level") {
        REQUIRE(series_W_bounded(2, 1, 8, 2) == series_D_bullet(8));
        REQUIRE(series_W_bounded(-2, -3, 8, -2) == series_D_bullet(8));
        REQUIRE(series_W_bounded(3, 2, 8, 3) == series_D_circ(8));
        REQUIRE(series_W_bounded(-1, -2, 8, -1) == series_D_circ(8));
    }

    SECTION("positive bridges carry the primitive series") {
        REQUIRE(tvar(9, 0) * series_W_bounded(0, 0, 9, 0) == series_D_bullet(9));
    }

    SECTION("resource limits") {
        REQUIRE_THROWS_MATCHES(series_W(0, 0, kMaxWalkLength + 1), MapError,
                               ErrorCodeIs(ErrorCode::ResourceLimit));
        REQUIRE_THROWS_MATCHES(series_W(0, 0, -1), MapError, ErrorCodeIs(ErrorCode::BadInterval));
        REQUIRE_THROWS_MATCHES(
            for_each_typed_walk(0, 0, kMaxTypedWalkLength + 1, [](const MotzkinWalk&) {}),
            MapError, ErrorCodeIs(ErrorCode::ResourceLimit));
    }
}

TEST_CASE("bridge steps pair off by parity") {
    int seen = 0;
    for_each_typed_walk(0, 0, 6, [&](const MotzkinWalk& w) {
        WalkWeight ww = walk_weight(w);
        REQUIRE(ww.e == ww.o);
        ++seen;
    });
    REQUIRE(seen > 1000);
}

TEST_CASE("walk series satisfy the first-passage decompositions") {
    const int N = 9;
    auto tb = tvar(N, 0), tw = tvar(N, 1);
    auto db = series_D_bullet(N), dc = series_D_circ(N), b = series_B(N);
    auto two_t = Rat(2) * (tb + tw);

    SECTION("one-step decompositions of the primitive and bridge series") {
        REQUIRE(db == tb + two_t * db + tb * dc * db);
        REQUIRE(dc == tw + two_t * dc + tw * db * dc);
        REQUIRE(b == tconst(N, 1) + two_t * b + (tb * dc + tw * db) * b);
    }

    SECTION("color symmetry") {
        auto db10 = series_D_bullet(10), dc10 = series_D_circ(10);
        REQUIRE(tvar(10, 1) * db10 == tvar(10, 0) * dc10);
        REQUIRE(series_B(10).swapped(0, 1) == series_B(10));
    }

    SECTION("the bridge series in terms of the primitive ones") {
        auto lhs = b * (tconst(N, 1) - db * dc);
        auto rhs = tconst(N, 1) + Rat(2) * (db + dc) + db * dc;
        REQUIRE(lhs == rhs);
    }

    SECTION("every walk factors into a bridge and first passages") {
        const int M = 7;
        auto dbm = series_D_bullet(M), dcm = series_D_circ(M), bm = series_B(M);
        for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 0},
                                                            {0, 1},
                                                            {1, 0},
                                                            {0, 2},
                                                            {2, 0},
                                                            {-1, 1},
                                                            {1, -2},
                                                            {3, 1},
                                                            {-2, -1}}) {
            auto expect = i <= j ? bm * delta_product(dbm, dcm, i, j)
                                 : bm * delta_product(dcm, dbm, j, i);
            REQUIRE(series_W(i, j, M) == expect);
        }
    }
}

TEST_CASE("delta exponents split label intervals") {
    REQUIRE(delta_exponents(0, 0) == std::pair<int, int>{0, 0});
    REQUIRE(delta_exponents(5, 5) == std::pair<int, int>{0, 0});
    REQUIRE(delta_exponents(0, 1) == std::pair<int, int>{1, 0});
    REQUIRE(delta_exponents(1, 2) == std::pair<int, int>{0, 1});
    REQUIRE(delta_exponents(0, 2) == std::pair<int, int>{1, 1});
    REQUIRE(delta_exponents(-1, 2) == std::pair<int, int>{1, 2});
    REQUIRE(delta_exponents(-4, -1) == std::pair<int, int>{2, 1});
    REQUIRE_THROWS_MATCHES(delta_exponents(1, 0), MapError, ErrorCodeIs(ErrorCode::BadInterval));

    for (int i = -5; i <= 5; ++i)
        for (int j = i; j <= 5; ++j) {
            auto [ev, od] = delta_exponents(i, j);
            int evens = 0;
            for (int k = i; k < j; ++k) evens += parity(k) == 0;
            REQUIRE(ev == evens);
            REQUIRE(ev + od == j - i);
        }

    auto x = tvar(5, 0), y = tvar(5, 1);
    REQUIRE(delta_product(x, y, 0, 3) == x * x * y);
    REQUIRE(delta_product(x, y, 1, 3) == x * y);
    REQUIRE(delta_product(x, y, 2, 2) == tconst(5, 1));
}

TEST_CASE("branches encode as typed walks") {
    SECTION("the six vertex shapes round trip") {
        std::vector<ChainVertex> shapes{
            {1, StemKind::Bud, StemKind::Leaf},  {1, StemKind::Leaf, StemKind::Bud},
            {0, StemKind::Bud, StemKind::Leaf},  {2, StemKind::Leaf, StemKind::Bud},
            {0, StemKind::Leaf, StemKind::Bud},  {2, StemKind::Bud, StemKind::Leaf}};
        std::set<std::pair<int, int>> steps;
        for (const ChainVertex& v : shapes) {
            TypedStep t = chain_vertex_step(v);
            REQUIRE(step_chain_vertex(t) == v);
            steps.insert({static_cast<int>(t.step), static_cast<int>(t.type)});
        }
        REQUIRE(steps.size() == 6);
    }

    SECTION("vertices with equal stems realize no step") {
        for (int gap : {0, 1, 2})
            for (StemKind k : {StemKind::Bud, StemKind::Leaf})
                REQUIRE_THROWS_MATCHES(chain_vertex_step({gap, k, k}), MapError,
                                       ErrorCodeIs(ErrorCode::HeightMismatch));
        REQUIRE_THROWS_MATCHES(chain_vertex_step({3, StemKind::Bud, StemKind::Leaf}), MapError,
                               ErrorCodeIs(ErrorCode::HeightMismatch));
        REQUIRE_THROWS_MATCHES(step_chain_vertex({MStep::Horizontal, HorizontalType::None}),
                               MapError, ErrorCodeIs(ErrorCode::DomainError));
    }

    SECTION("a single-edge branch is the empty walk") {
        Branch b{5, {}};
        REQUIRE(encode_branch(b) == MotzkinWalk{5, {}});
        REQUIRE(decode_branch(MotzkinWalk{5, {}}, 5, 5) == b);
        REQUIRE_THROWS_MATCHES(decode_branch(MotzkinWalk{0, {}}, 0, 1), MapError,
                               ErrorCodeIs(ErrorCode::HeightMismatch));
        REQUIRE_THROWS_MATCHES(decode_branch(parse_walk(0, "u"), 0, 0), MapError,
                               ErrorCodeIs(ErrorCode::HeightMismatch));
        REQUIRE_THROWS_MATCHES(decode_branch(parse_walk(1, "u"), 0, 2), MapError,
                               ErrorCodeIs(ErrorCode::HeightMismatch));
        REQUIRE_THROWS_MATCHES(decode_branch(parse_walk(0, "h"), 0, 0), MapError,
                               ErrorCodeIs(ErrorCode::DomainError));
    }

    SECTION("round trip on every short branch") {
        int seen = 0;
        for (int start : {-2, 0, 3})
            for (int end = start - 3; end <= start + 3; ++end)
                for_each_typed_walk(start, end, 3, [&](const MotzkinWalk& w) {
                    Branch b = decode_branch(w, start, end);
                    REQUIRE(static_cast<int>(b.vertices.size()) == w.length());
                    REQUIRE(b.lam0 == start);
                    REQUIRE(encode_branch(b) == w);
                    ++seen;
                });
        REQUIRE(seen > 500);
    }
}

TEST_CASE("grafting branches onto a scheme") {
    BlossomingMap theta = parse_blossoming(kTheta);

    SECTION("empty branches leave the scheme unchanged") {
        BlossomingMap same = graft_branches(theta, {{}, {}, {}});
        REQUIRE(print_blossoming(same) == print_blossoming(theta));
    }

    SECTION("error paths") {
        REQUIRE_THROWS_MATCHES(graft_branches(theta, {}), MapError,
                               ErrorCodeIs(ErrorCode::DomainError));
        // a two-bud vertex builds but its labels cannot close up
        Branch bad{0, {{1, StemKind::Bud, StemKind::Bud}}};
        REQUIRE_THROWS_MATCHES(canonical_labeling(graft_branches(theta, {bad, {}, {}})),
                               MapError, ErrorCodeIs(ErrorCode::UnbalancedStems));
        Branch wide{0, {{3, StemKind::Bud, StemKind::Leaf}}};
        REQUIRE_THROWS_MATCHES(graft_branches(theta, {wide, {}, {}}), MapError,
                               ErrorCodeIs(ErrorCode::HeightMismatch));
    }

    SECTION("decoded walks graft to labeled cores over the scheme") {
        LabeledScheme l = labeled_scheme_from_heights(theta, {0, 1});
        std::multiset<std::pair<int, int>> scheme_lams;
        for (int e = 0; e < theta.n_interior_edges; ++e)
            scheme_lams.insert({l.lam0[e], l.lam1[e]});
        int scheme_black = 0, scheme_white = 0;
        for (int d = 1; d <= theta.n; ++d)
            if (theta.kind[d] == StemKind::Leaf)
                ++(parity(l.stem_label[d]) == 0 ? scheme_black : scheme_white);

        std::vector<std::vector<Branch>> per_edge(theta.n_interior_edges);
        for (int e = 0; e < theta.n_interior_edges; ++e)
            for_each_typed_walk(l.lam0[e], l.lam1[e], 2, [&](const MotzkinWalk& w) {
                per_edge[e].push_back(decode_branch(w, l.lam0[e], l.lam1[e]));
            });
        REQUIRE(per_edge[0].size() == 9);
        REQUIRE(per_edge[1].size() == 9);
        REQUIRE(per_edge[2].size() == 9);

        const std::string scheme_print = print_blossoming(canonical_blossoming(theta));
        std::set<std::string> built;
        for (const Branch& b0 : per_edge[0])
            for (const Branch& b1 : per_edge[1])
                for (const Branch& b2 : per_edge[2]) {
                    BlossomingMap m = graft_branches(theta, {b0, b1, b2});
                    REQUIRE(m.genus == 1);
                    REQUIRE(is_core(m));
                    REQUIRE(is_scheme_rooted(m));
                    REQUIRE(is_well_labeled(m));
                    REQUIRE(is_two_in_two_out(m));

                    // the scheme under the grafted core is the one we started from
                    LabeledScheme back = scheme_of(m);
                    REQUIRE(print_blossoming(canonical_blossoming(back.s)) == scheme_print);
                    std::multiset<std::pair<int, int>> lams;
                    for (int e = 0; e < back.s.n_interior_edges; ++e)
                        lams.insert({back.lam0[e], back.lam1[e]});
                    REQUIRE(lams == scheme_lams);

                    // each chain vertex carries the leaf color its step predicts
                    int black = scheme_black, white = scheme_white;
                    for (const Branch& b : {b0, b1, b2}) {
                        auto [db, dw] = typed_leaf_colors(encode_branch(b));
                        black += db;
                        white += dw;
                    }
                    REQUIRE(leaf_colors(m) == std::pair<int, int>{black, white});

                    built.insert(print_blossoming(m));
                }
        REQUIRE(built.size() == 9u * 9u * 9u);
    }
}
