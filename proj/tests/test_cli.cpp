#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kh/harness.hpp"
#include "kh/runner.hpp"
#include "oracles.hpp"

using namespace kh;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string corpus(const std::string& name) {
    return std::string(KH_CORPUS_DIR) + "/" + name;
}

RunConfig base_config(const std::string& out) {
    RunConfig cfg;
    cfg.out_dir = out;
    cfg.spec.theory = TheoryKind::Khovanov;
    cfg.spec.ring = RingId::Z2;
    cfg.commands = {"bracket"};
    return cfg;
}

} // namespace

TEST_CASE("records are bit-identical across repeated runs") {
    fs::path dir1 = fs::temp_directory_path() / "khg_t1";
    fs::path dir2 = fs::temp_directory_path() / "khg_t2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    RunConfig cfg = base_config(dir1.string());
    cfg.inputs = {corpus("trefoil_right.kd"), corpus("virtual_trefoil.kd")};
    cfg.commands = {"bracket", "homology", "report", "verify-moves"};
    cfg.seed = 42;
    std::ostringstream log1, log2;
    CHECK(run(cfg, log1) == 0);
    cfg.out_dir = dir2.string();
    CHECK(run(cfg, log2) == 0);
    for (const auto& e : fs::directory_iterator(dir1)) {
        fs::path other = dir2 / e.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(e.path().string()) == slurp(other.string()));
    }
}

TEST_CASE("golden record files") {
    fs::path dir = fs::temp_directory_path() / "khg_golden";
    fs::remove_all(dir);
    std::string golden_dir = std::string(KH_CORPUS_DIR) + "/../tests/golden";

    RunConfig cfg = base_config(dir.string());
    cfg.inputs = {corpus("trefoil_right.kd")};
    cfg.commands = {"homology"};
    cfg.spec.ring = RingId::Q;
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    CHECK(slurp((dir / "trefoil_right__homology.json").string()) ==
          slurp(golden_dir + "/trefoil_right__homology_Q.json"));

    cfg.spec.ring = RingId::Z;
    REQUIRE(run(cfg, log) == 0);
    CHECK(slurp((dir / "trefoil_right__homology.json").string()) ==
          slurp(golden_dir + "/trefoil_right__homology_Z.json"));

    cfg.inputs = {corpus("unknot_bar.kd")};
    cfg.commands = {"bracket"};
    cfg.spec.ring = RingId::Z2;
    cfg.spec.dots.bars = true;
    REQUIRE(run(cfg, log) == 0);
    CHECK(slurp((dir / "unknot_bar__bracket.json").string()) ==
          slurp(golden_dir + "/unknot_bar__bracket.json"));
}

TEST_CASE("exit codes: 2 for config errors, 1 for computation failures") {
    fs::path dir = fs::temp_directory_path() / "khg_codes";
    fs::remove_all(dir);
    std::ostringstream log;

    RunConfig bad = base_config(dir.string());
    bad.inputs = {corpus("unknot.kd")};
    bad.commands = {"frobnicate"};
    CHECK(run(bad, log) == 2);

    RunConfig none = base_config(dir.string());
    none.inputs = {corpus("unknot.kd")};
    none.commands = {};
    CHECK(run(none, log) == 2);

    RunConfig small = base_config(dir.string());
    small.inputs = {corpus("trefoil_right.kd")};
    small.limit = 2;  // limit below the crossing count
    CHECK(run(small, log) == 2);

    RunConfig comp = base_config(dir.string());
    comp.inputs = {corpus("virtual_trefoil.kd")};
    comp.commands = {"homology"};
    comp.spec.ring = RingId::Z;  // 1->1 edge over a signed ring
    CHECK(run(comp, log) == 1);
    // the failure is recorded, not silent
    std::string rec = slurp((dir / "virtual_trefoil__homology.json").string());
    CHECK(rec.find("\"status\": \"error\"") != std::string::npos);

    RunConfig missing = base_config(dir.string());
    missing.inputs = {"/nonexistent/nope.kd"};
    CHECK(run(missing, log) == 2);
}

TEST_CASE("verify-moves: khovanov invariance with the braid R1 exception") {
    fs::path dir = fs::temp_directory_path() / "khg_moves";
    fs::remove_all(dir);
    std::ostringstream log;

    RunConfig cfg = base_config(dir.string());
    cfg.inputs = {corpus("braid2_closed.kd")};
    cfg.commands = {"verify-moves"};
    cfg.spec.dots.marker_sets = {0};
    cfg.seed = 5;
    int code = run(cfg, log);
    CHECK(code == 0);
    std::string rec = slurp((dir / "braid2_closed__verify-moves.json").string());
    CHECK(rec.find("expected_exception") != std::string::npos);
    CHECK(rec.find("small circle dotted") != std::string::npos);
}

TEST_CASE("verify_moves API: dotted annulus R1 breaks, undotted moves do not") {
    Diagram d = oracle::load("braid2_closed.kd");
    TheorySpec spec;
    spec.theory = TheoryKind::Khovanov;
    spec.ring = RingId::Z2;
    spec.dots.marker_sets = {0};

    ReidemeisterMove plain;
    plain.kind = ReidemeisterMove::Kind::R1Plus;
    plain.edge_a = 1;
    plain.handedness = 1;

    ReidemeisterMove markov = plain;
    markov.curl_sites = {Site{Site::Kind::Marker, 0}};

    auto checks = verify_moves(d, spec, {plain, markov});
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].applied);
    CHECK(checks[0].invariant);
    CHECK_FALSE(checks[0].expected_exception);
    CHECK(checks[1].applied);
    CHECK(checks[1].expected_exception);
    CHECK_FALSE(checks[1].invariant);  // the homology genuinely changes

    // long knot: endpoint dot, moves away from the endpoint keep the tables
    Diagram lt = oracle::load("trefoil_long.kd");
    TheorySpec lspec;
    lspec.theory = TheoryKind::Khovanov;
    lspec.ring = RingId::Z2;
    lspec.dots.endpoint_set = 0;
    ReidemeisterMove away;
    away.kind = ReidemeisterMove::Kind::R2;
    away.edge_a = 1;
    away.edge_b = 4;
    auto lchecks = verify_moves(lt, lspec, {away});
    REQUIRE(lchecks.size() == 1);
    CHECK(lchecks[0].applied);
    CHECK(lchecks[0].invariant);
}
