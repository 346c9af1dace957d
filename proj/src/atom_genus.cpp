#include "kh/diagram.hpp"
#include "kh/states.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace kh {

namespace {

// Connected pieces of the shadow (crossings, classical or virtual, glue
// edges together; free loops are their own piece).
std::vector<int> shadow_pieces(const Diagram& d, int& count) {
    std::map<int, int> idx;
    for (size_t i = 0; i < d.edges.size(); ++i) idx[d.edges[i].id] = static_cast<int>(i);
    std::vector<int> parent(d.edges.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (const auto& c : d.crossings)
        for (int i = 1; i < 4; ++i) unite(idx[c.port[0]], idx[c.port[static_cast<size_t>(i)]]);
    for (const auto& v : d.virtuals)
        for (int i = 1; i < 4; ++i) unite(idx[v.port[0]], idx[v.port[static_cast<size_t>(i)]]);
    std::map<int, int> roots;
    std::vector<int> piece(d.edges.size());
    for (size_t i = 0; i < d.edges.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (!roots.count(r)) {
            int nid = static_cast<int>(roots.size());
            roots[r] = nid;
        }
        piece[i] = roots[r];
    }
    count = static_cast<int>(roots.size());
    return piece;
}

} // namespace

int atom_genus(const Diagram& d) {
    if (d.edges.empty()) return 0;
    int pieces = 0;
    std::vector<int> piece = shadow_pieces(d, pieces);
    std::map<int, int> idx;
    for (size_t i = 0; i < d.edges.size(); ++i) idx[d.edges[i].id] = static_cast<int>(i);

    State all_a = trace_state(d, 0);
    uint32_t full = d.n() >= 32 ? 0xffffffffu : ((1u << d.n()) - 1u);
    State all_b = trace_state(d, full);

    // Per shadow piece: chi = gamma_A + gamma_B - n. Even chi is an
    // orientable atom (2 - 2g = chi); odd chi forces a non-orientable one
    // and reports its crosscap number (2 - g = chi).
    std::vector<int> gamma_a(static_cast<size_t>(pieces), 0),
        gamma_b(static_cast<size_t>(pieces), 0), ncross(static_cast<size_t>(pieces), 0);
    for (const Circle& c : all_a.circles)
        gamma_a[static_cast<size_t>(piece[static_cast<size_t>(idx[c.min_edge])])]++;
    for (const Circle& c : all_b.circles)
        gamma_b[static_cast<size_t>(piece[static_cast<size_t>(idx[c.min_edge])])]++;
    for (const auto& c : d.crossings)
        ncross[static_cast<size_t>(piece[static_cast<size_t>(idx[c.port[0]])])]++;

    int genus = 0;
    for (int p = 0; p < pieces; ++p) {
        int chi = gamma_a[static_cast<size_t>(p)] + gamma_b[static_cast<size_t>(p)] -
                  ncross[static_cast<size_t>(p)];
        genus += (chi % 2 == 0) ? (2 - chi) / 2 : 2 - chi;
    }
    return genus;
}

} // namespace kh
