#ifndef KH_RANDGEN_HPP
#define KH_RANDGEN_HPP

#include <cstdint>
#include <random>

#include "kh/diagram.hpp"

namespace kh {

struct RandomDiagramOptions {
    int max_crossings = 6;
    int max_components = 2;
    bool allow_bars = true;
    bool allow_markers = true;
};

/// Seeded random virtual link diagram from a random double-occurrence code:
/// every crossing is visited once as overpass and once as underpass along
/// randomly partitioned closed walks, so the written orientation is coherent.
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opt = {});

} // namespace kh

#endif
