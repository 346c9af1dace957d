#include "doctest.h"

#include "kh/homology.hpp"
#include <random>

#include "oracles.hpp"

using namespace kh;

namespace {

TheorySpec kh_spec(RingId ring, DottingConfig dots = {}) {
    TheorySpec s;
    s.theory = TheoryKind::Khovanov;
    s.ring = ring;
    s.dots = dots;
    return s;
}

// Homology ranks per (i, j) computed with the independent fraction oracle.
std::map<std::vector<int>, int> oracle_ranks_q(const GradedComplex<Rational>& c) {
    // dims and blocked matrices per (j) within heights
    int H = c.heights();
    std::map<std::vector<int>, int> dims;       // (b, j) -> dim
    std::map<std::vector<int>, int> ranks;      // (b, j) -> rank of d out
    for (int b = 0; b < H; ++b)
        for (const auto& g : c.gens[static_cast<size_t>(b)]) dims[{b, g.qdeg}]++;
    for (int b = 0; b + 1 < H; ++b) {
        std::map<int, std::vector<int>> cols_by_j, rows_by_j;
        const auto& gf = c.gens[static_cast<size_t>(b)];
        const auto& gt = c.gens[static_cast<size_t>(b + 1)];
        for (size_t i = 0; i < gf.size(); ++i) cols_by_j[gf[i].qdeg].push_back(static_cast<int>(i));
        for (size_t i = 0; i < gt.size(); ++i) rows_by_j[gt[i].qdeg].push_back(static_cast<int>(i));
        for (auto& [j, cols] : cols_by_j) {
            auto rit = rows_by_j.find(j);
            if (rit == rows_by_j.end()) continue;
            std::map<int, int> rpos, cpos;
            for (size_t i = 0; i < rit->second.size(); ++i) rpos[rit->second[i]] = static_cast<int>(i);
            for (size_t i = 0; i < cols.size(); ++i) cpos[cols[i]] = static_cast<int>(i);
            std::vector<std::vector<oracle::Frac>> m(rit->second.size(),
                                                     std::vector<oracle::Frac>(cols.size()));
            for (const auto& e : c.diff[static_cast<size_t>(b)].entries) {
                auto ci = cpos.find(e.col);
                auto ri = rpos.find(e.row);
                if (ci == cpos.end() || ri == rpos.end()) continue;
                long long num = e.value.num().to_i64(), den = e.value.den().to_i64();
                m[static_cast<size_t>(ri->second)][static_cast<size_t>(ci->second)] =
                    oracle::Frac(num, den);
            }
            int r = oracle::rank_q(std::move(m));
            if (r) ranks[{b, j}] = r;
        }
    }
    std::map<std::vector<int>, int> out;
    for (auto& [key, dim] : dims) {
        int b = key[0], j = key[1];
        int ro = ranks.count({b, j}) ? ranks[{b, j}] : 0;
        int ri = b > 0 && ranks.count({b - 1, j}) ? ranks[{b - 1, j}] : 0;
        int h = dim - ro - ri;
        if (h > 0) out[{b + c.height_shift, j}] = h;
    }
    return out;
}

} // namespace

TEST_CASE("smith normal form basics") {
    // toy differential diag(1,2,0): invariant factors {1,2}
    Dense<BigInt> m = {{BigInt(1), BigInt(0), BigInt(0)},
                       {BigInt(0), BigInt(2), BigInt(0)},
                       {BigInt(0), BigInt(0), BigInt(0)}};
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == 2);
    CHECK(d[0].to_i64() == 1);
    CHECK(d[1].to_i64() == 2);

    // random small matrices agree with the int64 oracle
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Dense<BigInt> a(r, std::vector<BigInt>(c, BigInt(0)));
        std::vector<std::vector<long long>> b(r, std::vector<long long>(c, 0));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) {
                long long v = static_cast<long long>(rng() % 9) - 4;
                a[i][j] = BigInt(v);
                b[i][j] = v;
            }
        auto da = smith_normal_form(a);
        auto db = oracle::snf_int(b);
        REQUIRE(da.size() == db.size());
        for (size_t i = 0; i < da.size(); ++i) CHECK(da[i].to_i64() == db[i]);
    }
}

TEST_CASE("unknot homology") {
    auto c = build_complex<Rational>(oracle::load("unknot.kd"), kh_spec(RingId::Q));
    auto t = homology_field(c);
    REQUIRE(t.groups.size() == 2);
    CHECK(t.groups.at({0, 1}).free_rank == 1);
    CHECK(t.groups.at({0, -1}).free_rank == 1);
    CHECK(poincare_polynomial(t).to_string() == "q^-1 + q");

    auto cz = build_complex<BigInt>(oracle::load("unknot.kd"), kh_spec(RingId::Z));
    auto tz = homology_integral(cz);
    CHECK(tz.groups.at({0, 1}).free_rank == 1);
    CHECK(tz.groups.at({0, -1}).free_rank == 1);
    for (const auto& [k, g] : tz.groups) CHECK(g.torsion.empty());
}

TEST_CASE("right trefoil golden homology (frozen from the elimination oracle)") {
    Diagram d = oracle::load("trefoil_right.kd");
    auto c = build_complex<Rational>(d, kh_spec(RingId::Q));
    auto t = homology_field(c);

    // oracle values, computed by the independent fraction elimination
    auto ranks = oracle_ranks_q(c);
    REQUIRE(ranks.size() == 4);
    CHECK(ranks.at({0, 1}) == 1);
    CHECK(ranks.at({0, 3}) == 1);
    CHECK(ranks.at({2, 5}) == 1);
    CHECK(ranks.at({3, 9}) == 1);

    // engine agrees with the oracle
    REQUIRE(t.groups.size() == 4);
    for (const auto& [key, grp] : t.groups) CHECK(grp.free_rank == ranks.at(key));

    // integral: one Z/2 torsion class, at (3, 7)
    auto cz = build_complex<BigInt>(d, kh_spec(RingId::Z));
    auto tz = homology_integral(cz);
    int torsion_count = 0;
    for (const auto& [key, grp] : tz.groups)
        for (const auto& o : grp.torsion) {
            ++torsion_count;
            CHECK(o == "2");
            CHECK(key == std::vector<int>{3, 7});
        }
    CHECK(torsion_count == 1);
}

TEST_CASE("rank-nullity audit per run") {
    for (const auto& name : {"trefoil_right.kd", "figure8.kd", "hopf.kd", "kink_neg.kd"}) {
        auto c = build_complex<Rational>(oracle::load(name), kh_spec(RingId::Q));
        auto t = homology_field(c);
        CHECK(t.chain_dim == t.total_rank() + 2 * t.rank_sum);
    }
}

TEST_CASE("universal coefficients direction: Z2 dims >= Q dims") {
    for (const auto& name : {"trefoil_right.kd", "trefoil_left.kd", "figure8.kd", "hopf.kd"}) {
        Diagram d = oracle::load(name);
        auto tq = homology_field(build_complex<Rational>(d, kh_spec(RingId::Q)));
        auto t2 = homology_field(build_complex<Z2>(d, kh_spec(RingId::Z2)));
        for (const auto& [key, grp] : tq.groups) {
            auto it = t2.groups.find(key);
            REQUIRE(it != t2.groups.end());
            CHECK(it->second.free_rank >= grp.free_rank);
        }
    }
}

TEST_CASE("homological length bounded by crossing number") {
    for (const auto& name : oracle::corpus_names()) {
        Diagram d = oracle::load(name);
        auto t = homology_field(build_complex<Z2>(d, kh_spec(RingId::Z2)));
        BoundsReport rep = report_bounds(t, d);
        CHECK(rep.length_ok);
        CHECK(rep.span_ok);
    }
}

TEST_CASE("bounds reports") {
    // alternating trefoil: thickness 2 <= 2 + genus 0
    Diagram tre = oracle::load("trefoil_right.kd");
    auto t = homology_field(build_complex<Rational>(tre, kh_spec(RingId::Q)));
    auto rep = report_bounds(t, tre);
    CHECK(rep.thickness == 2);
    CHECK(rep.atom_genus == 0);
    CHECK(rep.thickness_ok);

    // unknot through a bar: nonzero groups at bar-gradings -1 and +1 fire
    // the destabilisation obstruction
    Diagram ub = oracle::load("unknot_bar.kd");
    DottingConfig dots;
    dots.bars = true;
    auto tb = homology_field(build_complex<Z2>(ub, kh_spec(RingId::Z2, dots)));
    auto repb = report_bounds(tb, ub);
    CHECK(repb.grading_count == 1);
    CHECK(repb.destabilisation_obstruction);

    // bar-free diagrams never fire it (no additional gradings at all)
    auto repu = report_bounds(t, tre);
    CHECK_FALSE(repu.destabilisation_obstruction);

    // a dotted table all of whose groups sit at grading zero does not fire:
    // braid2 closure carries the annulus marker; its all-even part keeps the
    // obstruction off exactly when no odd-graded group exists (checked via
    // the actual table instead of a synthetic one)
    Diagram br = oracle::load("braid2_closed.kd");
    DottingConfig mdots;
    mdots.marker_sets = {0};
    auto tm = homology_field(build_complex<Z2>(br, kh_spec(RingId::Z2, mdots)));
    bool any_odd = false;
    for (const auto& [key, grp] : tm.groups)
        if (key[2] != 0) any_odd = true;
    auto repm = report_bounds(tm, br);
    CHECK(repm.destabilisation_obstruction == any_odd);
}

TEST_CASE("z2tc half-integer theorem: classical diagrams factor through c") {
    TheorySpec s;
    s.theory = TheoryKind::FrobeniusZ2tc;
    s.ring = RingId::Z2tc;
    for (const auto& name : {"unknot.kd", "kink_pos.kd", "trefoil_right.kd", "hopf.kd"}) {
        auto c = build_complex<PolyZ2tc>(oracle::load(name), s);
        CHECK_FALSE(has_c_entries(c));  // orientable atom: no odd c-power anywhere
        auto rep = z2tc_half_integer_report(c, 8);
        CHECK(rep.c_free_differential);
        // every half-integer-graded class is c times an integer-graded one
        CHECK(rep.parity_match);
        CHECK(!rep.even_dims.empty());
    }
    // non-classical contrast: the virtual trefoil complex carries c entries
    auto cv = build_complex<PolyZ2tc>(oracle::load("virtual_trefoil.kd"), s);
    CHECK(has_c_entries(cv));
    CHECK_FALSE(z2tc_half_integer_report(cv, 4).c_free_differential);
}

TEST_CASE("smith normal form over Z2[t]") {
    // diag-style toy over the second Euclidean instantiation
    auto t = [](unsigned k) { return PolyZ2t::t_power(k); };
    Dense<PolyZ2t> m = {{t(0) + t(1), t(1)}, {t(1), t(1)}};
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == 2);
    CHECK(EuclideanTraits<PolyZ2t>::is_unit(d[0]));
    // det = (1+t)t + t^2 = t, so the second factor is t
    CHECK(d[1] == t(1));
}

TEST_CASE("swap-and-regrade recovers the usual Khovanov table over Z2") {
    // endpoint-dotted long trefoil: swapping dotted labels and taking the
    // grading-preserving part reproduces Kh(trefoil; Z2) as an (i, j) table
    Diagram lt = oracle::load("trefoil_long.kd");
    TheorySpec lee;
    lee.theory = TheoryKind::Lee;
    lee.ring = RingId::Q;
    lee.dots.endpoint_set = 0;
    // over Z2: run the khovanov-ring analogue through the same pipeline
    TheorySpec kz = kh_spec(RingId::Z2);
    kz.dots.endpoint_set = 0;
    auto c = build_complex<Z2>(lt, kz);
    auto swapped = swap_dotted_labels(c);
    auto split = split_differential(swapped);
    auto cc = swapped;
    cc.diff = split.preserving;
    RetainSpec rj;
    rj.dotted = false;  // collapse the dotted axis; compare plain (i, j)
    auto t_swapped = homology_field(cc, rj);
    auto t_usual =
        homology_field(build_complex<Z2>(oracle::load("trefoil_right.kd"), kh_spec(RingId::Z2)));
    CHECK(t_swapped.same_groups(t_usual));
}

TEST_CASE("poincare polynomial") {
    HomologyTable empty;
    CHECK(poincare_polynomial(empty).to_string() == "0");

    Diagram d = oracle::load("trefoil_right.kd");
    auto t = homology_field(build_complex<Rational>(d, kh_spec(RingId::Q)));
    LaurentPoly p = poincare_polynomial(t);
    CHECK(p.terms().size() == 4);
    // graded Euler characteristic of the complex = Poincare at T = -1
    LaurentPoly minus_one = LaurentPoly::constant(BigInt(-1));
    LaurentPoly chi = p.substitute("T", minus_one, minus_one);
    auto c = build_complex<Rational>(d, kh_spec(RingId::Q));
    CHECK(chi == graded_euler_characteristic(c));
}
