#ifndef KH_THEORY_HPP
#define KH_THEORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "kh/rings.hpp"
#include "kh/states.hpp"

namespace kh {

enum class TheoryKind { Khovanov, FrobeniusUniversal, FrobeniusZ2tc, Lee };

inline const char* theory_name(TheoryKind t) {
    switch (t) {
        case TheoryKind::Khovanov: return "khovanov";
        case TheoryKind::FrobeniusUniversal: return "frobenius-universal";
        case TheoryKind::FrobeniusZ2tc: return "frobenius-z2tc";
        case TheoryKind::Lee: return "lee";
    }
    return "?";
}

/// One enabled dotting source. Tower sources carry the 2-adic level
/// (level 1 is the plain parity of the integral marker set).
struct DotSource {
    enum class Kind { Bars, Marker, Rigid, Endpoint, Tower };
    Kind kind;
    int marker_set = -1;  // Marker/Endpoint/Tower
    int level = 0;        // Tower
    std::string name() const {
        switch (kind) {
            case Kind::Bars: return "bars";
            case Kind::Marker: return "marker" + std::to_string(marker_set);
            case Kind::Rigid: return "rigid";
            case Kind::Endpoint: return "endpoint" + std::to_string(marker_set);
            case Kind::Tower: return "tower" + std::to_string(level);
        }
        return "?";
    }
};

struct DottingConfig {
    bool bars = false;
    std::vector<int> marker_sets;
    bool rigid = false;
    std::optional<int> endpoint_set;
    std::optional<int> integral_set;  // enables winding evaluations
    int tower_levels = 0;             // retained tower gradings over integral_set

    std::vector<DotSource> sources() const {
        std::vector<DotSource> out;
        if (bars) out.push_back({DotSource::Kind::Bars, -1, 0});
        for (int k : marker_sets) out.push_back({DotSource::Kind::Marker, k, 0});
        if (rigid) out.push_back({DotSource::Kind::Rigid, -1, 0});
        if (endpoint_set) out.push_back({DotSource::Kind::Endpoint, *endpoint_set, 0});
        if (integral_set)
            for (int l = 1; l <= tower_levels; ++l)
                out.push_back({DotSource::Kind::Tower, *integral_set, l});
        return out;
    }
    bool any() const { return !sources().empty(); }
};

/// Per-circle dot bit for one source.
inline int circle_dot(const Circle& c, const DotSource& s) {
    switch (s.kind) {
        case DotSource::Kind::Bars: return c.bar_parity;
        case DotSource::Kind::Marker: return c.marker_parity[static_cast<size_t>(s.marker_set)];
        case DotSource::Kind::Rigid: return c.rigid_parity;
        case DotSource::Kind::Endpoint: return c.marker_parity[static_cast<size_t>(s.marker_set)];
        case DotSource::Kind::Tower: {
            if (!c.winding) throw ValidationError("tower dotting requires a winding evaluation");
            long long w = *c.winding;
            if (w == 0) return 0;
            if (w < 0) w = -w;
            int v = 0;
            while ((w & 1) == 0) {
                w >>= 1;
                ++v;
            }
            return v == s.level - 1 ? 1 : 0;
        }
    }
    return 0;
}

/// A circle is dotted (for label rendering and gr') when any source dots it.
inline bool circle_dotted(const Circle& c, const std::vector<DotSource>& sources) {
    for (const auto& s : sources)
        if (circle_dot(c, s)) return true;
    return false;
}

struct TheorySpec {
    TheoryKind theory = TheoryKind::Khovanov;
    RingId ring = RingId::Z2;
    DottingConfig dots;
    /// Scalar for partial' + lambda * partial''; interpreted in the ring.
    long long lambda = 0;
    /// Apply the height/quantum normalization [-n_-]{n_+ - 2 n_-}.
    bool normalize = true;

    /// Ring compatibility per theory; throws ValidationError on mismatch.
    void validate() const {
        auto oneof = [&](std::initializer_list<RingId> ok) {
            for (RingId r : ok)
                if (ring == r) return true;
            return false;
        };
        switch (theory) {
            case TheoryKind::Khovanov:
                if (!oneof({RingId::Z2, RingId::Z4, RingId::Z, RingId::Q}))
                    throw ValidationError("khovanov theory needs ring Z2, Z4, Z or Q");
                break;
            case TheoryKind::FrobeniusUniversal:
                if (ring != RingId::Zht)
                    throw ValidationError("frobenius-universal needs ring Z[h,t]");
                break;
            case TheoryKind::FrobeniusZ2tc:
                if (ring != RingId::Z2tc)
                    throw ValidationError("frobenius-z2tc needs ring Z2[t,c]");
                break;
            case TheoryKind::Lee:
                if (ring != RingId::Q)
                    throw ValidationError("lee needs ring Q (t, h specialized)");
                break;
        }
    }

    /// Rings where -1 != 1; these require a cube with no 1->1 edges.
    bool signed_ring() const {
        return ring == RingId::Z || ring == RingId::Q || ring == RingId::Z4 ||
               ring == RingId::Zht;
    }
};

} // namespace kh

#endif
