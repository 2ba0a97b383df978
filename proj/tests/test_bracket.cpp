#include <catch2/catch_amalgamated.hpp>

#include <knotpoly/bracket.hpp>

#include "support.hpp"

using namespace knotpoly;
using testutil::load_diagram;

static LaurentPoly A(const char* s) { return LaurentPoly::parse(s, 'A'); }

TEST_CASE("trefoil bracket chain") {
    Diagram d = load_diagram("trefoil_right.pd");
    LaurentPoly br = kauffman_bracket(d);
    CHECK(br == A("A^-7 - A^-3 - A^5"));
    CHECK(br.to_string() == "A^-7 - A^-3 - A^5");
    LaurentPoly nb = normalized_bracket(d);
    CHECK(nb == A("-A^-16 + A^-12 + A^-4"));
    JonesPoly v = jones(d);
    CHECK(v.q_poly() == LaurentPoly::parse("q^4 + q^12 - q^16", 'q'));
    CHECK(v.to_string() == "t + t^3 - t^4");
}

TEST_CASE("left trefoil is the conjugate chain") {
    Diagram d = mirror(load_diagram("trefoil_right.pd"));
    CHECK(kauffman_bracket(d) == A("-A^-5 - A^3 + A^7"));
    CHECK(jones(d).to_string() == "-t^-4 + t^-3 + t^-1");
}

TEST_CASE("unknot conventions") {
    Diagram u = parse_pd("loops: 1");
    CHECK(kauffman_bracket(u) == LaurentPoly::one());
    CHECK(normalized_bracket(u) == LaurentPoly::one());
    CHECK(jones(u).to_string() == "1");
}

TEST_CASE("empty diagram bracket is an error") {
    Diagram none;
    CHECK_THROWS_AS(kauffman_bracket(none), error);
}

TEST_CASE("circle unions scale by delta") {
    Diagram two = parse_pd("loops: 2");
    CHECK(kauffman_bracket(two) == delta());
    CHECK(jones(two).to_string() == "-t^-1/2 - t^1/2");
    Diagram five = parse_pd("loops: 5");
    CHECK(kauffman_bracket(five) == delta().pow(4));
}

TEST_CASE("hopf link bracket and jones") {
    Diagram d = load_diagram("hopf.pd");
    CHECK(kauffman_bracket(d) == A("-A^-4 - A^4"));
    CHECK(jones(d).to_string() == "-t^1/2 - t^5/2");
    CHECK(jones(mirror(d)).to_string() == "-t^-5/2 - t^-1/2");
}

TEST_CASE("curl diagrams normalize to the unknot") {
    Diagram pos = load_diagram("curl_pos.pd");
    CHECK(kauffman_bracket(pos) == A("-A^3"));
    CHECK(normalized_bracket(pos) == LaurentPoly::one());
    CHECK(jones(pos).to_string() == "1");
    Diagram neg = load_diagram("curl_neg.pd");
    CHECK(kauffman_bracket(neg) == A("-A^-3"));
    CHECK(jones(neg).to_string() == "1");
}

TEST_CASE("state-sum cap is enforced") {
    Diagram d = load_diagram("trefoil_right.pd");
    CHECK_THROWS_AS(kauffman_bracket(d, 2), cap_error);
    Diagram big = d;
    for (int i = 0; i < 9; ++i) big = disjoint_union(big, d);
    REQUIRE(big.crossings.size() == 30);
    CHECK_THROWS_AS(kauffman_bracket(big), cap_error);
}

TEST_CASE("bracket conjugates under mirroring") {
    std::mt19937_64 rng(testutil::test_seed());
    for (int k = 0; k < 120; ++k) {
        Diagram d = testutil::random_diagram(rng, 12);
        CHECK(kauffman_bracket(mirror(d)) == kauffman_bracket(d).conjugate());
    }
}

TEST_CASE("disjoint circles multiply the bracket by delta") {
    std::mt19937_64 rng(testutil::test_seed() + 1);
    for (int k = 0; k < 120; ++k) {
        Diagram d = testutil::random_diagram(rng, 12);
        CHECK(kauffman_bracket(add_disjoint_circle(d)) == delta() * kauffman_bracket(d));
    }
}

TEST_CASE("curl surgery scales the bracket by a cube") {
    std::mt19937_64 rng(testutil::test_seed() + 2);
    int done = 0;
    while (done < 120) {
        Diagram d = testutil::random_diagram(rng, 11);
        auto edges = testutil::all_edges(d);
        if (edges.empty()) continue;
        int e = edges[rng() % edges.size()];
        LaurentPoly base = kauffman_bracket(d);
        CHECK(kauffman_bracket(add_curl(d, e, Handedness::right)) == A("-A^3") * base);
        CHECK(kauffman_bracket(add_curl(d, e, Handedness::left)) == A("-A^-3") * base);
        JonesPoly v = jones(d);
        CHECK(jones(add_curl(d, e, Handedness::right)) == v);
        CHECK(jones(add_curl(d, e, Handedness::left)) == v);
        ++done;
    }
}

TEST_CASE("switching formula holds on random crossings") {
    std::mt19937_64 rng(testutil::test_seed() + 3);
    int done = 0;
    while (done < 120) {
        Diagram d = testutil::random_diagram(rng, 12);
        if (d.crossings.empty()) continue;
        int i = static_cast<int>(rng() % d.crossings.size());
        LaurentPoly lhs = A("A") * kauffman_bracket(switch_crossing(d, i)) -
                          A("A^-1") * kauffman_bracket(d);
        LaurentPoly rhs = A("A^2 - A^-2") * kauffman_bracket(smooth_crossing(d, i, Smoothing::B));
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("bracket is multiplicative over split unions") {
    std::mt19937_64 rng(testutil::test_seed() + 4);
    for (int k = 0; k < 60; ++k) {
        Diagram d1 = testutil::random_diagram(rng, 6);
        Diagram d2 = testutil::random_diagram(rng, 6);
        CHECK(kauffman_bracket(disjoint_union(d1, d2)) ==
              delta() * kauffman_bracket(d1) * kauffman_bracket(d2));
    }
}
