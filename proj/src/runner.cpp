#include "kh/runner.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "kh/bracket.hpp"
#include "kh/harness.hpp"
#include "kh/randgen.hpp"
#include "kh/spectral.hpp"

namespace kh {

using Json = nlohmann::ordered_json;

namespace {

const char* kSchema = "khg.record.v1";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json config_echo(const RunConfig& cfg) {
    Json j;
    j["theory"] = theory_name(cfg.spec.theory);
    j["ring"] = ring_name(cfg.spec.ring);
    Json dots = Json::array();
    for (const auto& s : cfg.spec.dots.sources()) dots.push_back(s.name());
    j["dottings"] = dots;
    j["lambda"] = cfg.spec.lambda;
    j["normalize"] = cfg.spec.normalize;
    j["limit"] = cfg.limit;
    j["seed"] = cfg.seed;
    return j;
}

Json header(const RunConfig& cfg, const std::string& input, const std::string& command,
            const Diagram& d) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["diagram"] = std::filesystem::path(input).filename().string();
    j["crossings"] = d.n();
    j["virtuals"] = d.virtuals.size();
    j["components"] = d.components();
    j["config"] = config_echo(cfg);
    return j;
}

Json table_json(const HomologyTable& t) {
    Json j;
    j["axes"] = t.axes;
    Json groups = Json::array();
    for (const auto& [key, grp] : t.groups) {
        Json g;
        g["degree"] = key;
        g["rank"] = grp.free_rank;
        if (!grp.torsion.empty()) g["torsion"] = grp.torsion;
        groups.push_back(g);
    }
    j["groups"] = groups;
    j["poincare"] = poincare_polynomial(t).to_string();
    j["chain_dim"] = t.chain_dim;
    j["rank_sum"] = t.rank_sum;
    j["rank_nullity_ok"] = t.chain_dim == t.total_rank() + 2 * t.rank_sum;
    return j;
}

Json dsq_json(const DSquaredReport& rep) {
    Json j;
    j["d_squared_zero"] = rep.d_squared_zero;
    if (rep.split_checked) {
        j["d_prime_squared_zero"] = rep.d_prime_squared_zero;
        j["anticommutator_zero"] = rep.anticommutator_zero;
        j["d_second_squared_zero"] = rep.d_second_squared_zero;
    }
    if (!rep.first_violation.empty()) j["first_violation"] = rep.first_violation;
    return j;
}

struct CommandOutcome {
    Json payload;
    bool ok = true;
};

CommandOutcome cmd_bracket(const RunConfig& cfg, const Diagram& d) {
    CommandOutcome out;
    out.payload["kauffman"] = kauffman_bracket(d, cfg.limit).to_string();
    bool oriented = true;
    for (const auto& o : d.orientations())
        if (!o) oriented = false;
    if (oriented) out.payload["jones_normalized"] = jones_normalized(d, cfg.limit).to_string();
    auto bb = bourgoin_bracket(d, cfg.limit);
    out.payload["bourgoin_raw"] = bb.raw.to_string();
    out.payload["bourgoin_normalized"] = bb.normalized.to_string();
    out.payload["bourgoin_divisible"] = bb.divisible;
    out.payload["bourgoin_reported"] =
        cfg.normalize_bracket ? bb.normalized.to_string() : bb.raw.to_string();
    out.payload["substituted"] =
        substituted_bracket(d, cfg.spec.dots, cfg.spec.normalize, cfg.limit).to_string();
    return out;
}

CommandOutcome cmd_homology(const RunConfig& cfg, const Diagram& d) {
    CommandOutcome out;
    const TheorySpec& spec = cfg.spec;
    if (spec.ring == RingId::Z2tc) {
        auto c = build_complex<PolyZ2tc>(d, spec, cfg.limit);
        out.payload["verify"] = dsq_json(verify_d_squared(c));
        auto rep = z2tc_half_integer_report(c);
        out.payload["c_free_differential"] = rep.c_free_differential;
        out.payload["half_integer_classes_are_c_multiples"] = rep.parity_match;
        bool half = false;
        for (const auto& level : c.gens)
            for (const auto& g : level)
                if (g.gr2 % 2 != 0) half = true;
        out.payload["has_half_integer_gr_generators"] = half;
        return out;
    }
    if (spec.ring == RingId::Z4) {
        auto c = build_complex<Z4>(d, spec, cfg.limit);
        out.payload["verify"] = dsq_json(verify_d_squared(c));
        if (spec.lambda)
            out.payload["deformed"] = dsq_json(verify_deformed(c, Z4(spec.lambda)));
        return out;
    }
    if (spec.ring == RingId::Zht) {
        auto c = build_complex<PolyZht>(d, spec, cfg.limit);
        out.payload["verify"] = dsq_json(verify_d_squared(c));
        out.payload["euler"] = graded_euler_characteristic(c).to_string();
        return out;
    }
    HomologyTable t = homology_for(d, spec, cfg.limit);
    out.payload["table"] = table_json(t);
    switch (spec.ring) {
        case RingId::Z2:
            out.payload["verify"] = dsq_json(verify_d_squared(build_complex<Z2>(d, spec, cfg.limit)));
            break;
        case RingId::Q:
            out.payload["verify"] =
                dsq_json(verify_d_squared(build_complex<Rational>(d, spec, cfg.limit)));
            break;
        case RingId::Z:
            out.payload["verify"] =
                dsq_json(verify_d_squared(build_complex<BigInt>(d, spec, cfg.limit)));
            break;
        default: break;
    }
    return out;
}

template <class F>
Json spectral_json(const RunConfig& cfg, const Diagram& d) {
    auto c = build_complex<F>(d, cfg.spec, cfg.limit);
    FiltrationSelector sel;
    sel.use_gr = cfg.filter_by_gr;
    sel.source_index = cfg.filter_source;
    auto f = build_filtration(c, sel);
    auto pages = compute_pages(f);
    auto rep = certify_convergence(f, pages, c);
    Json j;
    j["filtration"] = cfg.filter_by_gr
                          ? std::string("gr")
                          : "source:" + c.sources[static_cast<size_t>(cfg.filter_source)].name();
    j["levels"] = Json::array({f.min_level, f.max_level});
    j["level_unit"] = "doubled grading";
    Json pgs = Json::array();
    for (size_t r = 0; r < pages.pages.size(); ++r) {
        Json pj;
        pj["r"] = r;
        Json dims = Json::array();
        for (const auto& [key, dim] : pages.pages[r])
            dims.push_back(Json::array({key.first, key.second, dim}));
        pj["dims"] = dims;
        Json ranks = Json::array();
        for (const auto& [key, rank] : pages.d_ranks[r])
            ranks.push_back(Json::array({key.first, key.second, rank}));
        pj["d_ranks"] = ranks;
        pgs.push_back(pj);
    }
    j["pages"] = pgs;
    j["collapse_page"] = pages.collapse_page;
    j["certified"] = rep.certified;
    j["graded_match"] = rep.graded_match;
    Json einf = Json::array();
    for (const auto& [h, dim] : rep.einf_by_height) einf.push_back(Json::array({h, dim}));
    j["e_infinity_by_height"] = einf;
    j["convention_note"] = rep.note;
    return j;
}

CommandOutcome cmd_spectral(const RunConfig& cfg, const Diagram& d) {
    CommandOutcome out;
    if (cfg.spec.ring == RingId::Z2)
        out.payload = spectral_json<Z2>(cfg, d);
    else if (cfg.spec.ring == RingId::Q)
        out.payload = spectral_json<Rational>(cfg, d);
    else
        throw ValidationError("spectral pages need field coefficients (Z2 or Q)");
    out.ok = out.payload["certified"].get<bool>();
    return out;
}

CommandOutcome cmd_verify_moves(const RunConfig& cfg, const Diagram& d) {
    CommandOutcome out;
    auto moves = fuzz_moves(d, cfg.seed);
    auto checks = verify_moves(d, cfg.spec, moves, cfg.limit);
    Json arr = Json::array();
    bool all_ok = true;
    int applied = 0;
    for (const auto& chk : checks) {
        Json j;
        j["move"] = chk.move;
        j["applied"] = chk.applied;
        if (chk.applied) {
            j["invariant"] = chk.invariant;
            if (chk.expected_exception) j["expected_exception"] = true;
            ++applied;
        }
        if (!chk.detail.empty()) j["detail"] = chk.detail;
        arr.push_back(j);
        if (!chk.ok()) all_ok = false;
    }
    out.payload["moves"] = arr;
    out.payload["applied"] = applied;
    out.payload["all_invariant_or_expected"] = all_ok;
    out.ok = all_ok;
    return out;
}

CommandOutcome cmd_report(const RunConfig& cfg, const Diagram& d) {
    CommandOutcome out;
    TheorySpec spec = cfg.spec;
    if (spec.ring != RingId::Z2 && spec.ring != RingId::Q && spec.ring != RingId::Z) {
        spec.theory = TheoryKind::Khovanov;
        spec.ring = RingId::Z2;
    }
    HomologyTable t = homology_for(d, spec, cfg.limit);
    BoundsReport rep = report_bounds(t, d, cfg.limit);
    out.payload["atom_genus"] = rep.atom_genus;
    out.payload["thickness"] = rep.thickness;
    out.payload["occupied_diagonals"] = rep.occupied_diagonals;
    out.payload["thickness_bound"] = 2 + rep.atom_genus;
    out.payload["thickness_ok"] = rep.thickness_ok;
    out.payload["bracket_span"] = rep.span;
    out.payload["span_bound"] = rep.span_bound;
    out.payload["span_ok"] = rep.span_ok;
    out.payload["homological_length"] = rep.homological_length;
    out.payload["length_ok"] = rep.length_ok;
    out.payload["additional_grading_count"] = rep.grading_count;
    out.payload["additional_grading_rank"] = rep.grading_rank;
    out.payload["destabilisation_obstruction"] = rep.destabilisation_obstruction;
    out.ok = rep.thickness_ok && rep.span_ok && rep.length_ok;
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (commands.empty()) throw ValidationError("no commands configured");
    if (inputs.empty()) throw ValidationError("no input diagrams");
    spec.validate();
    for (const auto& c : commands)
        if (c != "bracket" && c != "homology" && c != "spectral" && c != "verify-moves" &&
            c != "report")
            throw ValidationError("unknown command '" + c + "'");
    if (std::find(commands.begin(), commands.end(), "spectral") != commands.end() &&
        spec.ring != RingId::Z2 && spec.ring != RingId::Q)
        throw ValidationError("spectral needs ring Z2 or Q");
}

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        cfg.validate();
        std::filesystem::create_directories(cfg.out_dir);
        // limit >= n for every input
        for (const auto& input : cfg.inputs) {
            Diagram d = parse_diagram(read_file(input));
            if (d.n() > cfg.limit)
                throw ValidationError(input + ": " + std::to_string(d.n()) +
                                      " crossings exceeds --limit " + std::to_string(cfg.limit));
        }
    } catch (const std::exception& e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    }

    bool any_failure = false;
    // Diagrams are independent; records are emitted serially per diagram.
    for (const auto& input : cfg.inputs) {
        Diagram d;
        try {
            d = parse_diagram(read_file(input));
        } catch (const std::exception& e) {
            log << input << ": parse error: " << e.what() << "\n";
            any_failure = true;
            continue;
        }
        for (const auto& command : cfg.commands) {
            std::string stem = std::filesystem::path(input).stem().string();
            std::string out_path = cfg.out_dir + "/" + stem + "__" + command + ".json";
            Json rec = header(cfg, input, command, d);
            try {
                CommandOutcome res;
                if (command == "bracket")
                    res = cmd_bracket(cfg, d);
                else if (command == "homology")
                    res = cmd_homology(cfg, d);
                else if (command == "spectral")
                    res = cmd_spectral(cfg, d);
                else if (command == "verify-moves")
                    res = cmd_verify_moves(cfg, d);
                else
                    res = cmd_report(cfg, d);
                rec["status"] = res.ok ? "ok" : "failed";
                rec["payload"] = res.payload;
                if (!res.ok) any_failure = true;
            } catch (const std::exception& e) {
                rec["status"] = "error";
                rec["error"] = e.what();
                any_failure = true;
            }
            std::ofstream out(out_path);
            out << rec.dump(2) << "\n";
            log << out_path << ": " << rec["status"].get<std::string>() << "\n";
        }
    }
    return any_failure ? 1 : 0;
}

} // namespace kh
