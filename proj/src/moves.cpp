#include "kh/moves.hpp"

#include <algorithm>
#include <optional>

namespace kh {

namespace {

bool is_over_slot(int slot) { return slot == 1 || slot == 3; }

Edge take_edge(Diagram& d, int id) {
    for (auto it = d.edges.begin(); it != d.edges.end(); ++it)
        if (it->id == id) {
            Edge e = *it;
            d.edges.erase(it);
            return e;
        }
    throw MoveError("edge " + std::to_string(id) + " not found");
}

void rename_ports(Diagram& d, int old_id, int new_id) {
    for (auto& c : d.crossings)
        for (auto& p : c.port)
            if (p == old_id) p = new_id;
    for (auto& v : d.virtuals)
        for (auto& p : v.port)
            if (p == old_id) p = new_id;
}

void set_port(Diagram& d, const PortRef& p, int edge_id) {
    if (p.virt)
        d.virtuals[static_cast<size_t>(p.crossing)].port[static_cast<size_t>(p.slot)] = edge_id;
    else
        d.crossings[static_cast<size_t>(p.crossing)].port[static_cast<size_t>(p.slot)] = edge_id;
}

/// Merge two edges whose facing ends have just been freed by removing a
/// crossing. a == b means the strand closes into a free loop. Returns the
/// surviving id.
int join_edges(Diagram& d, int a, int b) {
    if (a == b) {
        Edge e = take_edge(d, a);
        e.closed = true;
        d.edges.push_back(e);
        return a;
    }
    Edge ea = take_edge(d, a);
    Edge eb = take_edge(d, b);
    Edge merged{std::min(a, b), false, {}};
    merged.sites = ea.sites;
    merged.sites.insert(merged.sites.end(), eb.sites.begin(), eb.sites.end());
    d.edges.push_back(merged);
    rename_ports(d, a, merged.id);
    rename_ports(d, b, merged.id);
    return merged.id;
}

Diagram r1_plus(const Diagram& d0, const ReidemeisterMove& m) {
    if (!d0.has_edge(m.edge_a)) throw MoveError("R1+: no such edge");
    Diagram d = d0;
    int g = d0.fresh_edge_id();  // curl loop edge
    int f = g + 1;               // continuation after the curl
    Edge& e = d.edge(m.edge_a);

    if (e.closed) {
        e.closed = false;
        Crossing c{};
        // Positive curl ports counterclockwise from under-in:
        // [strand-in, strand-out, loop, loop]; negative mirror.
        c.port = m.handedness > 0 ? std::array<int, 4>{e.id, e.id, g, g}
                                  : std::array<int, 4>{e.id, g, g, e.id};
        c.sign = m.handedness > 0 ? 1 : -1;
        d.crossings.push_back(c);
        d.edges.push_back(Edge{g, false, m.curl_sites});
        d.rebuild();
        return d;
    }

    size_t split = m.split_index < 0
                       ? e.sites.size()
                       : std::min(e.sites.size(), static_cast<size_t>(m.split_index));
    std::vector<Site> head_sites(e.sites.begin() + static_cast<long>(split), e.sites.end());
    e.sites.resize(split);
    const PortRef far = d0.ends(m.edge_a)[1];
    // The curl gadget is directed; feed it the piece the strand flows in on.
    int in_piece = m.edge_a, out_piece = f;
    if (!d0.flow_forward(m.edge_a)) std::swap(in_piece, out_piece);
    Crossing c{};
    c.port = m.handedness > 0 ? std::array<int, 4>{in_piece, out_piece, g, g}
                              : std::array<int, 4>{in_piece, g, g, out_piece};
    c.sign = m.handedness > 0 ? 1 : -1;
    d.crossings.push_back(c);
    d.edges.push_back(Edge{g, false, m.curl_sites});
    d.edges.push_back(Edge{f, false, head_sites});
    set_port(d, far, f);
    d.rebuild();
    return d;
}

Diagram r1_minus(const Diagram& d0, const ReidemeisterMove& m) {
    if (m.cross_a < 0 || m.cross_a >= d0.n()) throw MoveError("R1-: no such crossing");
    const Crossing c = d0.crossings[static_cast<size_t>(m.cross_a)];
    int loop_id = -1, s0 = -1;
    for (int i = 0; i < 4; ++i)
        if (c.port[static_cast<size_t>(i)] == c.port[static_cast<size_t>((i + 1) % 4)]) {
            loop_id = c.port[static_cast<size_t>(i)];
            s0 = i;
        }
    if (loop_id < 0) throw MoveError("R1-: crossing is not a curl");
    int sa = -1, sb = -1;
    for (int i = 0; i < 4; ++i)
        if (i != s0 && i != (s0 + 1) % 4) (sa < 0 ? sa : sb) = i;
    int e_in = c.port[static_cast<size_t>(sa)], e_out = c.port[static_cast<size_t>(sb)];

    Diagram d = d0;
    Edge loop = take_edge(d, loop_id);
    d.crossings.erase(d.crossings.begin() + m.cross_a);
    int merged = join_edges(d, e_in, e_out);
    Edge& me = d.edge(merged);
    me.sites.insert(me.sites.end(), loop.sites.begin(), loop.sites.end());
    d.rebuild();
    return d;
}

Diagram r2_insert(const Diagram& d0, const ReidemeisterMove& m) {
    if (m.edge_a == m.edge_b) throw MoveError("R2: needs two distinct edges");
    if (!d0.has_edge(m.edge_a) || !d0.has_edge(m.edge_b)) throw MoveError("R2: no such edge");
    Diagram d = d0;
    int next = d0.fresh_edge_id();
    int a1 = next++, b1 = next++;

    auto open_up = [&](int id) -> int {
        // Returns the id of the continuation segment after the gadget.
        Edge& e = d.edge(id);
        if (e.closed) {
            e.closed = false;
            return id;  // the strand loops back into the gadget
        }
        int cont = next++;
        const PortRef far = d0.ends(id)[1];
        d.edges.push_back(Edge{cont, false, {}});
        set_port(d, far, cont);
        return cont;
    };
    int a2 = open_up(m.edge_a);
    int b2 = open_up(m.edge_b);
    d.edges.push_back(Edge{a1, false, {}});
    d.edges.push_back(Edge{b1, false, {}});

    // The gadget is directed; feed each strand in on the piece it flows in on.
    int a_in = m.edge_a, a_out = a2, b_in = m.edge_b, b_out = b2;
    if (!d0.flow_forward(m.edge_a)) std::swap(a_in, a_out);
    if (!d0.flow_forward(m.edge_b)) std::swap(b_in, b_out);

    // Strand A passes over B twice; opposite signs.
    // X1 ports [b_in, a1, b1, a_in] sign +  (over runs a_in -> a1),
    // X2 ports [b1, a1, b_out, a_out] sign -  (over runs a1 -> a_out).
    d.crossings.push_back(Crossing{{b_in, a1, b1, a_in}, 1});
    d.crossings.push_back(Crossing{{b1, a1, b_out, a_out}, -1});
    d.rebuild();
    return d;
}

Diagram r2_remove(const Diagram& d0, const ReidemeisterMove& m) {
    int ca = m.cross_a, cb = m.cross_b;
    if (ca == cb || ca < 0 || cb < 0 || ca >= d0.n() || cb >= d0.n())
        throw MoveError("R2^-1: bad crossing pair");
    const Crossing x1 = d0.crossings[static_cast<size_t>(ca)];
    const Crossing x2 = d0.crossings[static_cast<size_t>(cb)];
    if (x1.sign == x2.sign) throw MoveError("R2^-1: signs must be opposite");

    auto has_at = [](const Crossing& c, int e, bool over) {
        for (int i = 0; i < 4; ++i)
            if (c.port[static_cast<size_t>(i)] == e && is_over_slot(i) == over) return true;
        return false;
    };
    int m_over = -1, m_under = -1;
    for (int i = 0; i < 4; ++i) {
        int e = x1.port[static_cast<size_t>(i)];
        if (is_over_slot(i) && has_at(x2, e, true)) m_over = e;
        if (!is_over_slot(i) && has_at(x2, e, false)) m_under = e;
    }
    if (m_over < 0 || m_under < 0 || m_over == m_under)
        throw MoveError("R2^-1: crossings do not bound a cancellable bigon");

    auto outer_of = [&](const Crossing& c, bool over, int middle) {
        int found = -1, count = 0;
        for (int i = 0; i < 4; ++i)
            if (is_over_slot(i) == over) {
                int e = c.port[static_cast<size_t>(i)];
                if (e != middle) {
                    found = e;
                    ++count;
                }
            }
        if (count != 1) throw MoveError("R2^-1: bigon pattern mismatch");
        return found;
    };
    int a_o1 = outer_of(x1, true, m_over), a_o2 = outer_of(x2, true, m_over);
    int b_o1 = outer_of(x1, false, m_under), b_o2 = outer_of(x2, false, m_under);

    Diagram d = d0;
    int hi = std::max(ca, cb), lo = std::min(ca, cb);
    d.crossings.erase(d.crossings.begin() + hi);
    d.crossings.erase(d.crossings.begin() + lo);

    Edge mid_a = take_edge(d, m_over);
    int a_id = join_edges(d, a_o1, a_o2);
    Edge& ae = d.edge(a_id);
    ae.sites.insert(ae.sites.end(), mid_a.sites.begin(), mid_a.sites.end());

    Edge mid_b = take_edge(d, m_under);
    // The other strand's outer edges may have been renamed by the first join.
    auto current = [&](int id) { return d.has_edge(id) ? id : a_id; };
    int b_id = join_edges(d, current(b_o1), current(b_o2));
    Edge& be = d.edge(b_id);
    be.sites.insert(be.sites.end(), mid_b.sites.begin(), mid_b.sites.end());
    d.rebuild();
    return d;
}

std::vector<int> connecting_edges(const Crossing& x, const Crossing& y) {
    std::vector<int> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (x.port[static_cast<size_t>(i)] == y.port[static_cast<size_t>(j)]) {
                int e = x.port[static_cast<size_t>(i)];
                if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
            }
    return out;
}

Diagram r3_apply(const Diagram& d0, const ReidemeisterMove& m) {
    std::array<int, 3> cs{m.cross_a, m.cross_b, m.cross_c};
    for (int c : cs)
        if (c < 0 || c >= d0.n()) throw MoveError("R3: no such crossing");
    if (cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2])
        throw MoveError("R3: crossings must be distinct");

    auto cands = [&](int a, int b) {
        return connecting_edges(d0.crossings[static_cast<size_t>(a)],
                                d0.crossings[static_cast<size_t>(b)]);
    };
    std::vector<int> c01 = cands(cs[0], cs[1]), c12 = cands(cs[1], cs[2]),
                     c02 = cands(cs[0], cs[2]);
    if (c01.empty() || c12.empty() || c02.empty())
        throw MoveError("R3: no triangle at this site");

    auto slot_of = [&](int cross, int e) {
        const auto& p = d0.crossings[static_cast<size_t>(cross)].port;
        for (int i = 0; i < 4; ++i)
            if (p[static_cast<size_t>(i)] == e) return i;
        return -1;
    };
    // Turn direction of a face walk entering via `ea` and leaving via `eb`;
    // 0 when the ports are not cyclically adjacent.
    auto turn = [&](int cross, int ea, int eb) {
        int sa = slot_of(cross, ea), sb = slot_of(cross, eb);
        if ((sa + 1) % 4 == sb) return 1;
        if ((sb + 1) % 4 == sa) return -1;
        return 0;
    };

    // Choose triangle sides: pairwise distinct, bounding an actual face
    // (consistent rotation direction at all three crossings), with one side
    // lying entirely over (or entirely under) at both of its crossings. That
    // side is the moving segment; the opposite crossing is the one it slides
    // across.
    for (int e01 : c01)
        for (int e12 : c12)
            for (int e02 : c02) {
                if (e01 == e12 || e12 == e02 || e01 == e02) continue;
                int t1 = turn(cs[1], e01, e12);
                int t2 = turn(cs[2], e12, e02);
                int t3 = turn(cs[0], e02, e01);
                if (t1 == 0 || t1 != t2 || t2 != t3) continue;
                struct Side {
                    int edge, ca, cb;
                };
                std::array<Side, 3> sides = {Side{e01, cs[0], cs[1]}, Side{e12, cs[1], cs[2]},
                                             Side{e02, cs[0], cs[2]}};
                bool slideable = false;
                for (const Side& s : sides) {
                    int sa = slot_of(s.ca, s.edge), sb = slot_of(s.cb, s.edge);
                    if (is_over_slot(sa) == is_over_slot(sb)) slideable = true;
                }
                if (!slideable) continue;

                // Every strand passes its two triangle crossings in the
                // opposite order after the slide: on each side the connecting
                // edge flips to the opposite strand slot at both crossings
                // and the outer edges trade crossings.
                Diagram d = d0;
                for (const Side& s : sides) {
                    int s_a = slot_of(s.ca, s.edge), s_b = slot_of(s.cb, s.edge);
                    int o_a = s_a ^ 2, o_b = s_b ^ 2;
                    auto& pa = d.crossings[static_cast<size_t>(s.ca)].port;
                    auto& pb = d.crossings[static_cast<size_t>(s.cb)].port;
                    int outer_a = pa[static_cast<size_t>(o_a)];
                    int outer_b = pb[static_cast<size_t>(o_b)];
                    pa[static_cast<size_t>(s_a)] = outer_b;
                    pa[static_cast<size_t>(o_a)] = s.edge;
                    pb[static_cast<size_t>(s_b)] = outer_a;
                    pb[static_cast<size_t>(o_b)] = s.edge;
                }
                d.rebuild();
                return d;
            }
    throw MoveError("R3: no slideable triangle at this site");
}

/// The virtual crossing adjacent to either end of `edge`, if any.
std::optional<int> adjacent_virtual(const Diagram& d, int edge) {
    if (d.edge(edge).closed) return std::nullopt;
    const auto& e = d.ends(edge);
    if (e[0].virt) return e[0].crossing;
    if (e[1].virt) return e[1].crossing;
    return std::nullopt;
}

Diagram detour(const Diagram& d0, const ReidemeisterMove& m) {
    if (!d0.has_edge(m.edge_a)) throw MoveError("detour: no such edge");
    Diagram d = d0;
    int carrier = m.edge_a;

    // Straighten: peel off virtual crossings adjacent to the carrier arc.
    // Each removal merges the carrier with its continuation, so repeatedly
    // inspecting the carrier's own endpoints reaches the whole arc.
    for (;;) {
        auto vi = adjacent_virtual(d, carrier);
        if (!vi) break;
        const VirtualCrossing v = d.virtuals[static_cast<size_t>(*vi)];
        d.virtuals.erase(d.virtuals.begin() + *vi);
        int j1 = join_edges(d, v.port[0], v.port[2]);
        int p1 = v.port[1], p3 = v.port[3];
        if (p1 == v.port[0] || p1 == v.port[2]) p1 = j1;
        if (p3 == v.port[0] || p3 == v.port[2]) p3 = j1;
        int j2 = p1 == p3 && p1 == j1 ? j1 : join_edges(d, p1, p3);
        if (!d.has_edge(carrier)) carrier = d.has_edge(j1) ? j1 : j2;
        // A fully detached strand becomes a free loop.
        d.rebuild();
    }

    // Re-thread through the requested target edges in order.
    for (int target : m.detour_targets) {
        if (!d.has_edge(target)) throw MoveError("detour: bad target edge");
        if (target == carrier) throw MoveError("detour: self-threading unsupported");
        int cont_c, cont_t;
        int next = d.fresh_edge_id();
        Edge& ce = d.edge(carrier);
        if (ce.closed) {
            ce.closed = false;
            cont_c = carrier;
        } else {
            cont_c = next++;
            const PortRef far = d.ends(carrier)[1];
            d.edges.push_back(Edge{cont_c, false, {}});
            set_port(d, far, cont_c);
        }
        Edge& te = d.edge(target);
        if (te.closed) {
            te.closed = false;
            cont_t = target;
        } else {
            cont_t = next++;
            const PortRef far = d.ends(target)[1];
            d.edges.push_back(Edge{cont_t, false, {}});
            set_port(d, far, cont_t);
        }
        d.virtuals.push_back(VirtualCrossing{{carrier, target, cont_c, cont_t}});
        d.rebuild();
        carrier = cont_c;
    }
    return d;
}

} // namespace

Diagram apply_move(const Diagram& d, const ReidemeisterMove& m) {
    Diagram out = [&] {
        switch (m.kind) {
            case ReidemeisterMove::Kind::R1Plus: return r1_plus(d, m);
            case ReidemeisterMove::Kind::R1Minus: return r1_minus(d, m);
            case ReidemeisterMove::Kind::R2: return r2_insert(d, m);
            case ReidemeisterMove::Kind::R2Inverse: return r2_remove(d, m);
            case ReidemeisterMove::Kind::R3: return r3_apply(d, m);
            case ReidemeisterMove::Kind::Detour: return detour(d, m);
        }
        throw MoveError("unknown move kind");
    }();
    if (out.components() != d.components())
        throw MoveError("move changed the component count; invalid site");
    return out;
}

std::vector<ReidemeisterMove> find_r1_removals(const Diagram& d) {
    std::vector<ReidemeisterMove> out;
    for (int ci = 0; ci < d.n(); ++ci) {
        const auto& c = d.crossings[static_cast<size_t>(ci)];
        for (int i = 0; i < 4; ++i)
            if (c.port[static_cast<size_t>(i)] == c.port[static_cast<size_t>((i + 1) % 4)]) {
                ReidemeisterMove m;
                m.kind = ReidemeisterMove::Kind::R1Minus;
                m.cross_a = ci;
                out.push_back(m);
                break;
            }
    }
    return out;
}

std::vector<ReidemeisterMove> find_r2_removals(const Diagram& d) {
    std::vector<ReidemeisterMove> out;
    for (int a = 0; a < d.n(); ++a)
        for (int b = a + 1; b < d.n(); ++b) {
            ReidemeisterMove m;
            m.kind = ReidemeisterMove::Kind::R2Inverse;
            m.cross_a = a;
            m.cross_b = b;
            try {
                apply_move(d, m);
                out.push_back(m);
            } catch (const MoveError&) {
            }
        }
    return out;
}

std::vector<ReidemeisterMove> find_r3_sites(const Diagram& d) {
    std::vector<ReidemeisterMove> out;
    for (int a = 0; a < d.n(); ++a)
        for (int b = a + 1; b < d.n(); ++b)
            for (int c = b + 1; c < d.n(); ++c) {
                ReidemeisterMove m;
                m.kind = ReidemeisterMove::Kind::R3;
                m.cross_a = a;
                m.cross_b = b;
                m.cross_c = c;
                try {
                    apply_move(d, m);
                    out.push_back(m);
                } catch (const MoveError&) {
                }
            }
    return out;
}

} // namespace kh
