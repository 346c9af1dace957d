#include "doctest.h"

#include "kh/bracket.hpp"
#include "kh/moves.hpp"
#include "oracles.hpp"

using namespace kh;

TEST_CASE("R1 pair: apply and undo returns an isomorphic diagram") {
    for (const auto& name : {"unknot.kd", "trefoil_right.kd", "virtual_trefoil.kd"}) {
        Diagram d = oracle::load(name);
        for (int hand : {+1, -1}) {
            ReidemeisterMove plus;
            plus.kind = ReidemeisterMove::Kind::R1Plus;
            plus.edge_a = d.edges[0].id;
            plus.handedness = hand;
            Diagram kinked = apply_move(d, plus);
            CHECK(kinked.n() == d.n() + 1);
            CHECK(kinked.components() == d.components());
            CHECK(writhe(kinked) == writhe(d) + hand);

            ReidemeisterMove minus;
            minus.kind = ReidemeisterMove::Kind::R1Minus;
            minus.cross_a = kinked.n() - 1;
            Diagram back = apply_move(kinked, minus);
            CHECK(isomorphic(back, d));
        }
    }
    // unknot + R1+ gives the positive kink diagram
    ReidemeisterMove plus;
    plus.kind = ReidemeisterMove::Kind::R1Plus;
    plus.edge_a = 1;
    plus.handedness = +1;
    CHECK(isomorphic(apply_move(oracle::load("unknot.kd"), plus), oracle::load("kink_pos.kd")));
    // and the positive kink loses its curl back to the unknot
    ReidemeisterMove minus;
    minus.kind = ReidemeisterMove::Kind::R1Minus;
    minus.cross_a = 0;
    CHECK(isomorphic(apply_move(oracle::load("kink_pos.kd"), minus), oracle::load("unknot.kd")));
}

TEST_CASE("R1- rejects non-curls") {
    Diagram t = oracle::load("trefoil_right.kd");
    ReidemeisterMove m;
    m.kind = ReidemeisterMove::Kind::R1Minus;
    m.cross_a = 0;
    CHECK_THROWS_AS(apply_move(t, m), MoveError);
}

TEST_CASE("R2 pair roundtrip") {
    for (const auto& name : {"trefoil_right.kd", "figure8.kd", "hopf.kd"}) {
        Diagram d = oracle::load(name);
        ReidemeisterMove r2;
        r2.kind = ReidemeisterMove::Kind::R2;
        r2.edge_a = d.edges[0].id;
        r2.edge_b = d.edges[1].id;
        Diagram poked = apply_move(d, r2);
        CHECK(poked.n() == d.n() + 2);
        CHECK(writhe(poked) == writhe(d));

        ReidemeisterMove r2i;
        r2i.kind = ReidemeisterMove::Kind::R2Inverse;
        r2i.cross_a = poked.n() - 2;
        r2i.cross_b = poked.n() - 1;
        Diagram back = apply_move(poked, r2i);
        CHECK(isomorphic(back, d));
    }
}

TEST_CASE("R2 inverse rejects clasps and non-bigons") {
    Diagram hopf = oracle::load("hopf.kd");  // same-sign clasp
    ReidemeisterMove m;
    m.kind = ReidemeisterMove::Kind::R2Inverse;
    m.cross_a = 0;
    m.cross_b = 1;
    CHECK_THROWS_AS(apply_move(hopf, m), MoveError);
}

TEST_CASE("R3 applies where a triangle exists and is an involution") {
    Diagram d = oracle::load("braid3_closed.kd");
    auto sites = find_r3_sites(d);
    REQUIRE(!sites.empty());
    Diagram slid = apply_move(d, sites[0]);
    CHECK(slid.n() == d.n());
    CHECK(writhe(slid) == writhe(d));
    // sliding back with the same triple restores the diagram
    Diagram back = apply_move(slid, sites[0]);
    CHECK(isomorphic(back, d));

    // no triangle on the plain trefoil braid closure
    ReidemeisterMove bad;
    bad.kind = ReidemeisterMove::Kind::R3;
    bad.cross_a = 0;
    bad.cross_b = 1;
    bad.cross_c = 2;
    CHECK_THROWS_AS(apply_move(oracle::load("trefoil_right.kd"), bad), MoveError);
}

TEST_CASE("detour straightens and rethreads") {
    Diagram v = oracle::load("virtual_trefoil.kd");
    ReidemeisterMove det;
    det.kind = ReidemeisterMove::Kind::Detour;
    det.edge_a = 2;
    det.detour_targets = {};
    Diagram flat = apply_move(v, det);
    CHECK(flat.virtuals.empty());
    CHECK(flat.components() == 1);
    CHECK(kauffman_bracket(flat) == kauffman_bracket(v));

    det.detour_targets = {1, 4};
    Diagram rich = apply_move(v, det);
    CHECK(rich.virtuals.size() == 2);
    CHECK(kauffman_bracket(rich) == kauffman_bracket(v));
}

TEST_CASE("moves preserve component count or are rejected") {
    Diagram hopf = oracle::load("hopf.kd");
    ReidemeisterMove r2;
    r2.kind = ReidemeisterMove::Kind::R2;
    r2.edge_a = 1;
    r2.edge_b = 2;
    CHECK(apply_move(hopf, r2).components() == 2);
}
