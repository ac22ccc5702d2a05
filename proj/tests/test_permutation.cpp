#include <catch2/catch_amalgamated.hpp>

#include "mapforge/permutation.hpp"

using namespace mapforge;

TEST_CASE("cycle decomposition is canonical") {
    Perm p = Perm::from_cycle_string(6, "(2 5)(1 4 3)");
    auto cyc = p.cycles();
    REQUIRE(cyc.size() == 3);
    REQUIRE(cyc[0] == std::vector<int>{1, 4, 3});
    REQUIRE(cyc[1] == std::vector<int>{2, 5});
    REQUIRE(cyc[2] == std::vector<int>{6});
    REQUIRE(p.to_cycle_string() == "(1 4 3)(2 5)(6)");
}

TEST_CASE("compose applies right factor first") {
    Perm a = Perm::from_cycle_string(3, "(1 2)");
    Perm b = Perm::from_cycle_string(3, "(2 3)");
    Perm ab = a.compose(b);
    REQUIRE(ab(1) == 2);  // a(b(1)) = a(1)
    REQUIRE(ab(2) == 3);  // a(b(2)) = a(3)
    REQUIRE(ab(3) == 1);  // a(b(3)) = a(2)
}

TEST_CASE("inverse and involution checks") {
    Perm p = Perm::from_cycle_string(5, "(1 3 5 2 4)");
    REQUIRE(p.compose(p.inverse()).is_identity());
    REQUIRE(p.inverse().compose(p).is_identity());

    Perm invol = Perm::from_cycle_string(4, "(1 2)(3 4)");
    REQUIRE(invol.is_involution());
    REQUIRE(!invol.has_fixed_point());
    Perm fixed = Perm::from_cycle_string(4, "(1 2)");
    REQUIRE(fixed.is_involution());
    REQUIRE(fixed.has_fixed_point());
}

TEST_CASE("cycle ids match cycles order") {
    Perm p = Perm::from_cycle_string(6, "(1 4 3)(2 5)");
    auto ids = p.cycle_ids();
    REQUIRE(ids[1] == 0);
    REQUIRE(ids[4] == 0);
    REQUIRE(ids[3] == 0);
    REQUIRE(ids[2] == 1);
    REQUIRE(ids[5] == 1);
    REQUIRE(ids[6] == 2);
    REQUIRE(p.cycle_count() == 3);
}

TEST_CASE("cycle string parsing rejects malformed input") {
    REQUIRE_THROWS_AS(Perm::from_cycle_string(3, "(1 2"), MapError);
    REQUIRE_THROWS_AS(Perm::from_cycle_string(3, "(1 1)"), MapError);
    REQUIRE_THROWS_AS(Perm::from_cycle_string(3, "(1 4)"), MapError);
    REQUIRE_THROWS_AS(Perm::from_cycle_string(3, "1 2"), MapError);
}

TEST_CASE("round trip through cycle strings") {
    Perm p = Perm::from_cycle_string(7, "(1 6)(2 7 3)");
    Perm q = Perm::from_cycle_string(7, p.to_cycle_string());
    REQUIRE(p == q);
}
