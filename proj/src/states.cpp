#include "kh/states.hpp"

#include <algorithm>
#include <map>

namespace kh {

namespace {

// Smoothing pairings on slots 0..3 (counterclockwise from under-in).
// A joins (0,1)(2,3); B joins (0,3)(1,2); virtual crossings pass 0-2, 1-3.
int smooth_partner(bool b_smoothing, int slot) {
    if (b_smoothing) {
        static constexpr int tab[4] = {3, 2, 1, 0};
        return tab[slot];
    }
    static constexpr int tab[4] = {1, 0, 3, 2};
    return tab[slot];
}
int virtual_partner(int slot) { return slot ^ 2; }

} // namespace

State trace_state(const Diagram& d, uint32_t smoothing, std::optional<int> integral_marker) {
    State st;
    st.smoothing = smoothing;
    st.beta = __builtin_popcount(smoothing);
    st.alpha = d.n() - st.beta;

    // Edge-end tokens: 2*i = tail of edges[i], 2*i+1 = head.
    size_t ne = d.edges.size();
    std::vector<bool> used(2 * ne, false);

    std::vector<Circle> circles;
    for (size_t i = 0; i < ne; ++i) {
        if (d.edges[i].closed) {
            Circle c;
            c.traversal = {{d.edges[i].id, true}};
            c.min_edge = d.edges[i].id;
            circles.push_back(std::move(c));
            used[2 * i] = used[2 * i + 1] = true;
        }
    }

    // Map (virt, crossing, slot) -> edge-end token, to continue walks.
    auto end_token = [&](const PortRef& p) -> size_t {
        int id = p.virt ? d.virtuals[static_cast<size_t>(p.crossing)].port[static_cast<size_t>(p.slot)]
                        : d.crossings[static_cast<size_t>(p.crossing)].port[static_cast<size_t>(p.slot)];
        const auto& e2 = d.ends(id);
        size_t idx = 0;
        while (d.edges[idx].id != id) ++idx;
        if (e2[0] == p) return 2 * idx;
        return 2 * idx + 1;
    };

    for (size_t start = 0; start < 2 * ne; ++start) {
        if (used[start]) continue;
        // Walk a circle starting by leaving edge `start/2` from end `start%2`
        // toward the other end.
        Circle c;
        size_t curEdge = start / 2;
        bool forward = (start % 2) == 0;  // leaving tail means traversing forward
        for (;;) {
            size_t leaveTok = 2 * curEdge + (forward ? 0 : 1);
            size_t arriveTok = 2 * curEdge + (forward ? 1 : 0);
            if (used[leaveTok]) break;
            used[leaveTok] = true;
            used[arriveTok] = true;
            c.traversal.emplace_back(d.edges[curEdge].id, forward);
            const PortRef arrive = d.ends(d.edges[curEdge].id)[forward ? 1 : 0];
            PortRef next;
            next.virt = arrive.virt;
            next.crossing = arrive.crossing;
            if (arrive.virt) {
                next.slot = virtual_partner(arrive.slot);
            } else {
                bool b = (smoothing >> arrive.crossing) & 1u;
                next.slot = smooth_partner(b, arrive.slot);
            }
            size_t tok = end_token(next);
            curEdge = tok / 2;
            forward = (tok % 2) == 0;
        }
        if (!c.traversal.empty()) circles.push_back(std::move(c));
    }

    // Canonical rotation/orientation: start at the minimal edge id running
    // forward; matrices downstream become deterministic.
    for (auto& c : circles) {
        size_t best = 0;
        for (size_t i = 1; i < c.traversal.size(); ++i)
            if (c.traversal[i].first < c.traversal[best].first) best = i;
        std::rotate(c.traversal.begin(), c.traversal.begin() + static_cast<long>(best),
                    c.traversal.end());
        if (!c.traversal[0].second) {
            std::reverse(c.traversal.begin(), c.traversal.end());
            std::rotate(c.traversal.begin(), c.traversal.end() - 1, c.traversal.end());
            for (auto& [e, f] : c.traversal) f = !f;
        }
        c.min_edge = c.traversal[0].first;
    }
    std::sort(circles.begin(), circles.end(),
              [](const Circle& a, const Circle& b) { return a.min_edge < b.min_edge; });

    // Dot evaluations.
    int kmax = d.max_marker_set();
    for (auto& c : circles) {
        c.marker_parity.assign(static_cast<size_t>(kmax + 1), 0);
        long long wind = 0;
        for (auto& [eid, fwd] : c.traversal) {
            for (const Site& s : d.edge(eid).sites) {
                if (s.kind == Site::Kind::Bar) {
                    c.bar_parity ^= 1;
                } else {
                    c.marker_parity[static_cast<size_t>(s.marker_set)] ^= 1;
                    if (integral_marker && s.marker_set == *integral_marker)
                        wind += fwd ? 1 : -1;
                }
            }
        }
        if (integral_marker) c.winding = wind;
    }

    // Rigid parity: virtual crossings where both strands lie on one circle.
    if (!d.virtuals.empty()) {
        // circle index per edge id
        std::map<int, int> circ_of;
        for (size_t ci = 0; ci < circles.size(); ++ci)
            for (auto& [e, f] : circles[ci].traversal) circ_of[e] = static_cast<int>(ci);
        for (const auto& v : d.virtuals) {
            int c02 = circ_of[v.port[0]];
            int c13 = circ_of[v.port[1]];
            if (c02 == c13) circles[static_cast<size_t>(c02)].rigid_parity ^= 1;
        }
    }

    st.circles = std::move(circles);
    return st;
}

namespace {

Cube finish_cube(const Diagram& d, std::vector<State> states) {
    Cube cube;
    cube.states = std::move(states);
    int n = d.n();
    for (uint32_t s = 0; s < cube.states.size(); ++s) {
        for (int c = 0; c < n; ++c) {
            if ((s >> c) & 1u) continue;
            CubeEdge e;
            e.from = s;
            e.to = s | (1u << c);
            e.crossing = c;
            const State& fs = cube.states[e.from];
            const State& ts = cube.states[e.to];
            int df = fs.gamma() - ts.gamma();
            e.kind = df == 1    ? CubeEdge::Kind::Merge
                     : df == -1 ? CubeEdge::Kind::Split
                                : CubeEdge::Kind::Single;
            if (df != 1 && df != -1 && df != 0)
                throw std::logic_error("cube edge changes circle count by more than one");

            const auto& ports = d.crossings[static_cast<size_t>(c)].port;
            auto incident = [&](const State& state, int& c0, int& c1) {
                int found[2] = {-1, -1};
                int nf = 0;
                // Scan ports by ascending edge id so that the circle holding
                // the smallest attached edge id comes first.
                std::array<int, 4> sorted = ports;
                std::sort(sorted.begin(), sorted.end());
                for (int pid : sorted) {
                    for (size_t ci = 0; ci < state.circles.size(); ++ci) {
                        if (!state.circles[ci].traverses(pid)) continue;
                        bool dup = false;
                        for (int k = 0; k < nf; ++k)
                            if (found[k] == static_cast<int>(ci)) dup = true;
                        if (!dup && nf < 2) found[nf++] = static_cast<int>(ci);
                        break;
                    }
                }
                c0 = found[0];
                c1 = found[1];
            };
            incident(fs, e.from_c0, e.from_c1);
            incident(ts, e.to_c0, e.to_c1);
            cube.edges.push_back(e);
        }
    }
    std::sort(cube.edges.begin(), cube.edges.end(), [](const CubeEdge& a, const CubeEdge& b) {
        if (a.from != b.from) return a.from < b.from;
        return a.crossing < b.crossing;
    });
    return cube;
}

void check_limit(const Diagram& d, int limit) {
    if (d.n() > limit)
        throw CubeLimitError("diagram has " + std::to_string(d.n()) +
                             " crossings; cube limit is " + std::to_string(limit));
}

} // namespace

Cube enumerate_states(const Diagram& d, int limit, std::optional<int> integral_marker) {
    check_limit(d, limit);
    size_t total = size_t{1} << d.n();
    std::vector<State> states(total);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long s = 0; s < static_cast<long long>(total); ++s)
        states[static_cast<size_t>(s)] =
            trace_state(d, static_cast<uint32_t>(s), integral_marker);
    return finish_cube(d, std::move(states));
}

Cube enumerate_states_serial(const Diagram& d, int limit, std::optional<int> integral_marker) {
    check_limit(d, limit);
    size_t total = size_t{1} << d.n();
    std::vector<State> states(total);
    for (size_t s = 0; s < total; ++s)
        states[s] = trace_state(d, static_cast<uint32_t>(s), integral_marker);
    return finish_cube(d, std::move(states));
}

std::vector<int> secondary_gradings(const Circle& c, int levels) {
    if (!c.winding.has_value())
        throw ValidationError("circle carries no winding evaluation");
    std::vector<int> g(static_cast<size_t>(levels), 0);
    long long w = *c.winding;
    if (w == 0) return g;
    if (w < 0) w = -w;
    int v = 0;
    while ((w & 1) == 0) {
        w >>= 1;
        ++v;
    }
    if (v < levels) g[static_cast<size_t>(v)] = 1;
    return g;
}

} // namespace kh
