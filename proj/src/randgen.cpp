#include "kh/randgen.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace kh {

Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opt) {
    int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(opt.max_crossings));
    // double-occurrence sequence of crossing ids
    std::vector<int> seq;
    for (int k = 0; k < n; ++k) {
        seq.push_back(k);
        seq.push_back(k);
    }
    std::shuffle(seq.begin(), seq.end(), rng);

    // partition into cyclic walks (components)
    int m = 1 + static_cast<int>(rng() % static_cast<uint64_t>(opt.max_components));
    m = std::min(m, static_cast<int>(seq.size()));
    std::vector<size_t> cut_points{0};
    for (int i = 1; i < m; ++i)
        cut_points.push_back(1 + rng() % (seq.size() - 1));
    std::sort(cut_points.begin(), cut_points.end());
    cut_points.erase(std::unique(cut_points.begin(), cut_points.end()), cut_points.end());
    cut_points.push_back(seq.size());

    // a crossing whose two visits land in one walk or two; record per visit
    struct Visit {
        int in_edge, out_edge;
    };
    std::vector<std::vector<Visit>> visits(static_cast<size_t>(n));
    int edge_id = 0;
    for (size_t c = 0; c + 1 < cut_points.size(); ++c) {
        size_t lo = cut_points[c], hi = cut_points[c + 1];
        if (lo == hi) continue;
        size_t len = hi - lo;
        int first_edge = edge_id;
        for (size_t i = 0; i < len; ++i) {
            int in_e = i == 0 ? first_edge + static_cast<int>(len) - 1
                              : edge_id - 1;
            int out_e = edge_id;
            visits[static_cast<size_t>(seq[lo + i])].push_back({in_e + 1, out_e + 1});
            ++edge_id;
        }
    }

    Diagram d;
    for (int k = 0; k < n; ++k) {
        const auto& v = visits[static_cast<size_t>(k)];
        if (v.size() != 2) throw std::logic_error("random diagram: visit bookkeeping");
        bool first_under = rng() & 1;
        const Visit& under = first_under ? v[0] : v[1];
        const Visit& over = first_under ? v[1] : v[0];
        int sign = (rng() & 1) ? 1 : -1;
        Crossing c{};
        c.sign = sign;
        if (sign > 0)
            c.port = {under.in_edge, over.out_edge, under.out_edge, over.in_edge};
        else
            c.port = {under.in_edge, over.in_edge, under.out_edge, over.out_edge};
        d.crossings.push_back(c);
    }
    for (int e = 1; e <= edge_id; ++e) d.edges.push_back(Edge{e, false, {}});

    if (opt.allow_bars && (rng() % 3) == 0) {
        int count = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < count; ++i)
            d.edges[rng() % d.edges.size()].sites.push_back(Site{Site::Kind::Bar, -1});
    }
    if (opt.allow_markers && (rng() % 3) == 0) {
        int count = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < count; ++i)
            d.edges[rng() % d.edges.size()].sites.push_back(Site{Site::Kind::Marker, 0});
    }
    if ((rng() % 5) == 0) d.edges.push_back(Edge{++edge_id, true, {}});
    d.rebuild();
    return d;
}

} // namespace kh
