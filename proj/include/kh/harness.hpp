#ifndef KH_HARNESS_HPP
#define KH_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kh/homology.hpp"
#include "kh/moves.hpp"
#include "kh/theory.hpp"

namespace kh {

/// Homology table for a theory spec over its configured ring, blocked by the
/// gradings the theory preserves. Signed-ring requests on diagrams with 1->1
/// edges throw; Z4/Zht/Z2tc requests throw (no homology backend for them).
HomologyTable homology_for(const Diagram& d, const TheorySpec& spec, int limit = 20);

struct MoveCheck {
    std::string move;
    bool applied = false;
    bool invariant = false;
    bool expected_exception = false;  // dotted small circle: invariance waived
    std::string detail;

    bool ok() const { return !applied || invariant || expected_exception; }
};

/// Compare homology tables before/after each move. Moves whose new small
/// circle carries an enabled dotting are reported as expected exceptions.
std::vector<MoveCheck> verify_moves(const Diagram& d, const TheorySpec& spec,
                                    const std::vector<ReidemeisterMove>& moves,
                                    int limit = 20);

/// Deterministic set of applicable moves for fuzzing: R1 both ways, R2, the
/// discoverable R1-/R2-/R3 sites, and detours on virtual arcs.
std::vector<ReidemeisterMove> fuzz_moves(const Diagram& d, uint64_t seed, int count = 6);

std::string move_name(const ReidemeisterMove& m);

} // namespace kh

#endif
