#ifndef KH_MOVES_HPP
#define KH_MOVES_HPP

#include <vector>

#include "kh/diagram.hpp"

namespace kh {

struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A located move. Field use per kind:
///  R1Plus:    edge_a (strand edge), handedness (+1/-1), curl_sites (tokens
///             placed on the new loop edge), split_index (how many of
///             edge_a's sites stay before the curl).
///  R1Minus:   cross_a (curl crossing index).
///  R2:        edge_a (strand pushed over), edge_b (strand passed under).
///  R2Inverse: cross_a, cross_b (the bigon pair).
///  R3:        cross_a, cross_b, cross_c (the triangle, any order).
///  Detour:    edge_a (any edge of the virtual arc), detour_targets (edges the
///             rerouted arc virtually crosses, in order; empty = straighten).
struct ReidemeisterMove {
    enum class Kind { R1Plus, R1Minus, R2, R2Inverse, R3, Detour };
    Kind kind;
    int edge_a = -1, edge_b = -1;
    int cross_a = -1, cross_b = -1, cross_c = -1;
    int handedness = +1;
    int split_index = -1;  // -1 = all sites stay before the curl
    std::vector<Site> curl_sites;
    std::vector<int> detour_targets;
};

/// Apply a move; throws MoveError when the site does not match the pattern.
/// Component count is preserved.
Diagram apply_move(const Diagram& d, const ReidemeisterMove& m);

/// Site discovery, used by the fuzzing harness and tests.
std::vector<ReidemeisterMove> find_r1_removals(const Diagram& d);
std::vector<ReidemeisterMove> find_r2_removals(const Diagram& d);
std::vector<ReidemeisterMove> find_r3_sites(const Diagram& d);

} // namespace kh

#endif
