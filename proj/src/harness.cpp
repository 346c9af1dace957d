#include "kh/harness.hpp"

#include <random>
#include <sstream>

namespace kh {

HomologyTable homology_for(const Diagram& d, const TheorySpec& spec, int limit) {
    spec.validate();
    RetainSpec retain;
    switch (spec.theory) {
        case TheoryKind::Khovanov:
            retain.q = true;
            retain.dotted = true;
            break;
        case TheoryKind::Lee:
            retain.q = false;
            retain.dotted = false;
            break;
        default:
            throw ValidationError("no homology backend for ring " + std::string(ring_name(spec.ring)));
    }
    switch (spec.ring) {
        case RingId::Z2: return homology_field(build_complex<Z2>(d, spec, limit), retain);
        case RingId::Q: return homology_field(build_complex<Rational>(d, spec, limit), retain);
        case RingId::Z: return homology_integral(build_complex<BigInt>(d, spec, limit), retain);
        default:
            throw ValidationError("no homology backend for ring " +
                                  std::string(ring_name(spec.ring)));
    }
}

std::string move_name(const ReidemeisterMove& m) {
    std::ostringstream os;
    switch (m.kind) {
        case ReidemeisterMove::Kind::R1Plus:
            os << "R1" << (m.handedness > 0 ? "+" : "-") << "@e" << m.edge_a;
            if (!m.curl_sites.empty()) os << "(dotted curl)";
            break;
        case ReidemeisterMove::Kind::R1Minus: os << "R1^-1@x" << m.cross_a; break;
        case ReidemeisterMove::Kind::R2: os << "R2@e" << m.edge_a << ",e" << m.edge_b; break;
        case ReidemeisterMove::Kind::R2Inverse:
            os << "R2^-1@x" << m.cross_a << ",x" << m.cross_b;
            break;
        case ReidemeisterMove::Kind::R3:
            os << "R3@x" << m.cross_a << ",x" << m.cross_b << ",x" << m.cross_c;
            break;
        case ReidemeisterMove::Kind::Detour: os << "detour@e" << m.edge_a; break;
    }
    return os.str();
}

namespace {

/// The R1 curl circle is dotted when its loop edge carries a token of an
/// enabled source (the braid-closure Markov move).
bool curl_dotted(const ReidemeisterMove& m, const DottingConfig& dots) {
    if (m.kind != ReidemeisterMove::Kind::R1Plus) return false;
    for (const Site& s : m.curl_sites) {
        if (s.kind == Site::Kind::Bar && dots.bars) return true;
        if (s.kind == Site::Kind::Marker) {
            for (int k : dots.marker_sets)
                if (k == s.marker_set) return true;
            if (dots.endpoint_set && *dots.endpoint_set == s.marker_set) return true;
            if (dots.integral_set && *dots.integral_set == s.marker_set) return true;
        }
    }
    return false;
}

} // namespace

std::vector<MoveCheck> verify_moves(const Diagram& d, const TheorySpec& spec,
                                    const std::vector<ReidemeisterMove>& moves, int limit) {
    std::vector<MoveCheck> out;
    HomologyTable before = homology_for(d, spec, limit);
    for (const auto& m : moves) {
        MoveCheck chk;
        chk.move = move_name(m);
        try {
            Diagram moved = apply_move(d, m);
            chk.applied = true;
            HomologyTable after = homology_for(moved, spec, limit);
            chk.invariant = before.same_groups(after);
            if (curl_dotted(m, spec.dots)) {
                chk.expected_exception = true;
                chk.detail = "small circle dotted: invariance not expected";
            } else if (!chk.invariant) {
                chk.detail = "tables differ";
            }
        } catch (const MoveError& e) {
            chk.applied = false;
            chk.detail = e.what();
        } catch (const ValidationError& e) {
            // the moved diagram left the theory's domain (say, a 1->1 edge
            // appeared over a signed ring); no invariance claim applies
            chk.applied = false;
            chk.detail = e.what();
        }
        out.push_back(std::move(chk));
    }
    return out;
}

std::vector<ReidemeisterMove> fuzz_moves(const Diagram& d, uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<ReidemeisterMove> out;
    auto rand_edge = [&]() { return d.edges[rng() % d.edges.size()].id; };
    for (int i = 0; i < count && !d.edges.empty(); ++i) {
        ReidemeisterMove m;
        m.kind = ReidemeisterMove::Kind::R1Plus;
        m.edge_a = rand_edge();
        m.handedness = (rng() & 1) ? 1 : -1;
        out.push_back(m);
    }
    if (d.edges.size() >= 2)
        for (int i = 0; i < count; ++i) {
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R2;
            m.edge_a = rand_edge();
            m.edge_b = rand_edge();
            if (m.edge_a == m.edge_b) continue;
            out.push_back(m);
        }
    if (d.max_marker_set() >= 0) {
        // Markov-stabilization-like curl: the small circle crosses the cut
        ReidemeisterMove m;
        m.kind = ReidemeisterMove::Kind::R1Plus;
        m.edge_a = rand_edge();
        m.handedness = 1;
        m.curl_sites = {Site{Site::Kind::Marker, 0}};
        out.push_back(m);
    }
    auto r1s = find_r1_removals(d);
    out.insert(out.end(), r1s.begin(), r1s.end());
    auto r2s = find_r2_removals(d);
    out.insert(out.end(), r2s.begin(), r2s.end());
    auto r3s = find_r3_sites(d);
    out.insert(out.end(), r3s.begin(), r3s.end());
    if (!d.virtuals.empty()) {
        ReidemeisterMove m;
        m.kind = ReidemeisterMove::Kind::Detour;
        m.edge_a = d.virtuals[0].port[0];
        if (d.edges.size() >= 2) {
            int t = rand_edge();
            if (t != m.edge_a) m.detour_targets.push_back(t);
        }
        out.push_back(m);
    }
    return out;
}

} // namespace kh
