#ifndef KH_STATES_HPP
#define KH_STATES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "kh/diagram.hpp"

namespace kh {

struct CubeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One traced state circle with every dotting evaluation the theories need.
struct Circle {
    /// Cyclic edge walk, canonical: starts at the minimal traversed edge id,
    /// oriented so that edge runs forward. (edge id, forward?) per step.
    std::vector<std::pair<int, bool>> traversal;
    uint8_t bar_parity = 0;
    uint8_t rigid_parity = 0;              // virtual self-crossings mod 2
    std::vector<uint8_t> marker_parity;    // per marker set 0..k_max
    std::optional<long long> winding;      // signed count over the integral set
    int min_edge = 0;

    bool traverses(int edge_id) const {
        for (auto& [e, f] : traversal)
            if (e == edge_id) return true;
        return false;
    }
};

struct State {
    uint32_t smoothing = 0;  // bit c set = B-smoothing at crossing c
    int alpha = 0, beta = 0; // counts of A- and B-smoothings
    std::vector<Circle> circles;  // ascending min_edge

    int gamma() const { return static_cast<int>(circles.size()); }
};

struct CubeEdge {
    enum class Kind { Merge, Split, Single };
    uint32_t from = 0, to = 0;  // to = from | (1 << crossing)
    int crossing = 0;
    Kind kind = Kind::Merge;
    // Incident circle indices; first = circle containing the smallest edge id
    // attached at the smoothed crossing. Unused slots are -1.
    int from_c0 = -1, from_c1 = -1;
    int to_c0 = -1, to_c1 = -1;
};

struct Cube {
    std::vector<State> states;     // indexed by smoothing bits
    std::vector<CubeEdge> edges;   // sorted by (from, crossing)
};

/// Trace the circles of one state. `integral_marker` (if any) enables the
/// winding evaluation on every circle.
State trace_state(const Diagram& d, uint32_t smoothing,
                  std::optional<int> integral_marker = std::nullopt);

/// Enumerate all 2^n states and classify all n*2^(n-1) cube edges.
/// Parallel over state indices; the serial variant is the reference
/// implementation kept for testing and benchmarking.
Cube enumerate_states(const Diagram& d, int limit = 20,
                      std::optional<int> integral_marker = std::nullopt);
Cube enumerate_states_serial(const Diagram& d, int limit = 20,
                             std::optional<int> integral_marker = std::nullopt);

/// Secondary grading tower of a circle from its winding number: entry i is 1
/// exactly when 2^i exactly divides the winding (all zero for winding 0).
/// Throws ValidationError when no winding evaluation is present.
std::vector<int> secondary_gradings(const Circle& c, int levels = 4);

} // namespace kh

#endif
