#include "kh/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kh {

namespace {

// Underlying-curve partner: strands run 0<->2 and 1<->3 at every crossing.
int opposite(int slot) { return slot ^ 2; }

// Flow roles at a classical crossing as written: port 0 is under-in,
// 2 under-out; sign +1 puts over-in at 3, over-out at 1.
bool is_in_port(const Crossing& c, int slot) {
    if (slot == 0) return true;
    if (slot == 2) return false;
    return c.sign > 0 ? slot == 3 : slot == 1;
}

} // namespace

int Diagram::edge_index(int id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    throw ValidationError("unknown edge id " + std::to_string(id));
}

const Edge& Diagram::edge(int id) const { return edges[static_cast<size_t>(edge_index(id))]; }
Edge& Diagram::edge(int id) { return edges[static_cast<size_t>(edge_index(id))]; }
bool Diagram::has_edge(int id) const {
    for (const auto& e : edges)
        if (e.id == id) return true;
    return false;
}

const std::array<PortRef, 2>& Diagram::ends(int id) const {
    return ends_[static_cast<size_t>(edge_index(id))];
}

int Diagram::components() const {
    int mx = -1;
    for (int c : edge_component_) mx = std::max(mx, c);
    return mx + 1;
}

int Diagram::component_of(int edge_id) const {
    return edge_component_[static_cast<size_t>(edge_index(edge_id))];
}

bool Diagram::flow_forward(int edge_id) const {
    if (edge(edge_id).closed) return true;
    size_t start = static_cast<size_t>(edge_index(edge_id));
    size_t cur = start;
    bool cur_dir = true;
    do {
        const auto& e2 = ends_[cur];
        PortRef arrive = cur_dir ? e2[1] : e2[0];
        if (!arrive.virt) {
            // The walk is one continuous strand direction that traverses the
            // starting edge tail-to-head; arriving on an in-port means that
            // direction is the flow.
            const Crossing& cr = crossings[static_cast<size_t>(arrive.crossing)];
            return arrive.slot == 0 || (cr.sign > 0 ? arrive.slot == 3 : arrive.slot == 1);
        }
        PortRef leave{true, arrive.crossing, arrive.slot ^ 2};
        int next_id = virtuals[static_cast<size_t>(leave.crossing)].port[static_cast<size_t>(leave.slot)];
        size_t next = static_cast<size_t>(edge_index(next_id));
        cur_dir = ends_[next][0] == leave;
        cur = next;
    } while (!(cur == start && cur_dir));
    return true;
}

void Diagram::set_orientation(int component, std::optional<bool> o) {
    if (component < 0 || component >= static_cast<int>(orient_.size()))
        throw ValidationError("no such component");
    if (o.has_value() && !coherent_[static_cast<size_t>(component)])
        throw ValidationError("component has no coherent written orientation");
    orient_[static_cast<size_t>(component)] = o;
}

bool Diagram::has_bars() const {
    for (const auto& e : edges)
        for (const auto& s : e.sites)
            if (s.kind == Site::Kind::Bar) return true;
    return false;
}

int Diagram::fresh_edge_id() const {
    int mx = 0;
    for (const auto& e : edges) mx = std::max(mx, e.id);
    return mx + 1;
}

void Diagram::rebuild() {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i].id == edges[i - 1].id)
            throw ValidationError("duplicate edge id " + std::to_string(edges[i].id));

    std::map<int, std::vector<PortRef>> uses;
    for (int ci = 0; ci < static_cast<int>(crossings.size()); ++ci)
        for (int s = 0; s < 4; ++s)
            uses[crossings[static_cast<size_t>(ci)].port[static_cast<size_t>(s)]].push_back(
                {false, ci, s});
    for (int vi = 0; vi < static_cast<int>(virtuals.size()); ++vi)
        for (int s = 0; s < 4; ++s)
            uses[virtuals[static_cast<size_t>(vi)].port[static_cast<size_t>(s)]].push_back(
                {true, vi, s});

    ends_.assign(edges.size(), {});
    for (size_t i = 0; i < edges.size(); ++i) {
        auto it = uses.find(edges[i].id);
        size_t count = it == uses.end() ? 0 : it->second.size();
        if (edges[i].closed) {
            if (count != 0)
                throw ValidationError("closed edge " + std::to_string(edges[i].id) +
                                      " attached to a crossing");
        } else {
            if (count != 2)
                throw ValidationError("edge " + std::to_string(edges[i].id) + " used " +
                                      std::to_string(count) + " times; expected 2");
            ends_[i] = {it->second[0], it->second[1]};
        }
        if (it != uses.end()) uses.erase(it);
    }
    if (!uses.empty())
        throw ValidationError("edge id " + std::to_string(uses.begin()->first) +
                              " used at a crossing but never declared");

    // Marker sets contiguous 0..k_max.
    std::vector<bool> seen;
    max_marker_ = -1;
    for (const auto& e : edges)
        for (const auto& s : e.sites)
            if (s.kind == Site::Kind::Marker) {
                if (s.marker_set < 0) throw ValidationError("negative marker set");
                if (s.marker_set >= static_cast<int>(seen.size()))
                    seen.resize(static_cast<size_t>(s.marker_set) + 1, false);
                seen[static_cast<size_t>(s.marker_set)] = true;
                max_marker_ = std::max(max_marker_, s.marker_set);
            }
    for (bool b : seen)
        if (!b) throw ValidationError("marker set indices not contiguous");

    // Trace the underlying curve to identify components and check whether
    // the written port roles orient each one coherently.
    edge_component_.assign(edges.size(), -1);
    std::vector<bool> comp_coherent;
    int comp = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (edge_component_[i] >= 0) continue;
        if (edges[i].closed) {
            edge_component_[i] = comp;
            comp_coherent.push_back(true);
            ++comp;
            continue;
        }
        // Walk the underlying curve; flow coherence holds when every arrival
        // lands on an in-port (or, for the reversed traversal, every arrival
        // lands on an out-port).
        bool all_in = true, all_out = true;
        size_t start = i;
        size_t cur = start;
        bool cur_dir = true;  // traversing tail->head
        do {
            edge_component_[cur] = comp;
            const auto& e2 = ends_[cur];
            PortRef arrive = cur_dir ? e2[1] : e2[0];
            if (!arrive.virt) {
                const Crossing& cr = crossings[static_cast<size_t>(arrive.crossing)];
                (is_in_port(cr, arrive.slot) ? all_out : all_in) = false;
            }
            PortRef leave{arrive.virt, arrive.crossing, opposite(arrive.slot)};
            int next_id = leave.virt
                              ? virtuals[static_cast<size_t>(leave.crossing)]
                                    .port[static_cast<size_t>(leave.slot)]
                              : crossings[static_cast<size_t>(leave.crossing)]
                                    .port[static_cast<size_t>(leave.slot)];
            size_t next = static_cast<size_t>(edge_index(next_id));
            bool next_dir;
            if (ends_[next][0] == leave)
                next_dir = true;
            else if (ends_[next][1] == leave)
                next_dir = false;
            else
                throw ValidationError("incidence index corrupt");
            cur = next;
            cur_dir = next_dir;
        } while (!(cur == start && cur_dir == true));
        comp_coherent.push_back(all_in || all_out);
        ++comp;
    }
    coherent_ = comp_coherent;
    orient_.assign(static_cast<size_t>(comp), std::nullopt);
    for (int c = 0; c < comp; ++c)
        if (coherent_[static_cast<size_t>(c)]) orient_[static_cast<size_t>(c)] = true;
}

Diagram parse_diagram(const std::string& text) {
    Diagram d;
    std::map<int, Edge> edge_map;
    std::vector<std::pair<int, Site>> pending_sites;  // (edge, token) in file order

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto touch_edge = [&](int id) {
        if (!edge_map.count(id)) edge_map[id] = Edge{id, false, {}};
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto want_int = [&](const char* what) {
            long long v;
            if (!(ls >> v))
                throw ParseError(std::string("expected ") + what, lineno,
                                 static_cast<int>(ls.tellg()));
            return static_cast<int>(v);
        };
        if (tok == "X") {
            Crossing c{};
            for (int i = 0; i < 4; ++i) c.port[static_cast<size_t>(i)] = want_int("edge id");
            std::string s;
            if (!(ls >> s) || (s != "+" && s != "-"))
                throw ParseError("expected crossing sign + or -", lineno, 0);
            c.sign = s == "+" ? 1 : -1;
            d.crossings.push_back(c);
            for (int p : c.port) touch_edge(p);
        } else if (tok == "V") {
            VirtualCrossing v{};
            for (int i = 0; i < 4; ++i) v.port[static_cast<size_t>(i)] = want_int("edge id");
            d.virtuals.push_back(v);
            for (int p : v.port) touch_edge(p);
        } else if (tok == "U") {
            int id = want_int("edge id");
            if (edge_map.count(id))
                throw ParseError("edge id " + std::to_string(id) + " already declared", lineno, 0);
            edge_map[id] = Edge{id, true, {}};
        } else if (tok == "B") {
            int e = want_int("edge id");
            pending_sites.emplace_back(e, Site{Site::Kind::Bar, -1});
        } else if (tok == "M") {
            int k = want_int("marker set");
            int e = want_int("edge id");
            pending_sites.emplace_back(e, Site{Site::Kind::Marker, k});
        } else {
            throw ParseError("unknown directive '" + tok + "'", lineno, 0);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens", lineno, 0);
    }
    for (auto& [e, site] : pending_sites) {
        auto it = edge_map.find(e);
        if (it == edge_map.end())
            throw ParseError("site on undeclared edge " + std::to_string(e), 0, 0);
        it->second.sites.push_back(site);
    }
    for (auto& [id, e] : edge_map) d.edges.push_back(std::move(e));
    try {
        d.rebuild();
    } catch (const ValidationError& err) {
        throw ParseError(err.what(), 0, 0);
    }
    return d;
}

std::string serialize(const Diagram& d) {
    std::ostringstream out;
    for (const auto& c : d.crossings)
        out << "X " << c.port[0] << ' ' << c.port[1] << ' ' << c.port[2] << ' ' << c.port[3]
            << ' ' << (c.sign > 0 ? '+' : '-') << '\n';
    for (const auto& v : d.virtuals)
        out << "V " << v.port[0] << ' ' << v.port[1] << ' ' << v.port[2] << ' ' << v.port[3]
            << '\n';
    for (const auto& e : d.edges)
        if (e.closed) out << "U " << e.id << '\n';
    for (const auto& e : d.edges)
        for (const auto& s : e.sites) {
            if (s.kind == Site::Kind::Bar)
                out << "B " << e.id << '\n';
            else
                out << "M " << s.marker_set << ' ' << e.id << '\n';
        }
    return out.str();
}

namespace {

// Components of both strands through a classical crossing and whether each
// strand is reversed relative to the written flow.
struct StrandInfo {
    int under_comp, over_comp;
};

StrandInfo strands_of(const Diagram& d, const Crossing& c) {
    return {d.component_of(c.port[0]), d.component_of(c.port[1])};
}

} // namespace

int writhe(const Diagram& d) {
    auto [np, nm] = crossing_signs(d);
    return np - nm;
}

std::pair<int, int> crossing_signs(const Diagram& d) {
    const auto& orient = d.orientations();
    for (const auto& o : orient)
        if (!o.has_value()) throw ValidationError("diagram has an unoriented component");
    int np = 0, nm = 0;
    for (const auto& c : d.crossings) {
        StrandInfo si = strands_of(d, c);
        int s = c.sign;
        if (!*orient[static_cast<size_t>(si.under_comp)]) s = -s;
        if (!*orient[static_cast<size_t>(si.over_comp)]) s = -s;
        (s > 0 ? np : nm)++;
    }
    return {np, nm};
}

Diagram canonical_form(const Diagram& d) {
    // BFS over the incidence structure starting at the lowest edge id;
    // edges renumbered 0.. in discovery order, crossings reordered by first
    // discovery. Deterministic, cheap, and stable under id churn from moves.
    std::map<int, int> rename;
    std::vector<int> cross_order, virt_order;
    std::vector<bool> cross_seen(d.crossings.size(), false),
        virt_seen(d.virtuals.size(), false);
    std::vector<int> queue;
    auto visit_edge = [&](int id) {
        if (!rename.count(id)) {
            int nid = static_cast<int>(rename.size());
            rename[id] = nid;
            queue.push_back(id);
        }
    };
    std::vector<int> all_ids;
    for (const auto& e : d.edges) all_ids.push_back(e.id);
    std::sort(all_ids.begin(), all_ids.end());
    size_t seed = 0, qhead = 0;
    while (rename.size() < d.edges.size()) {
        while (seed < all_ids.size() && rename.count(all_ids[seed])) ++seed;
        if (qhead == queue.size()) visit_edge(all_ids[seed]);
        while (qhead < queue.size()) {
            int id = queue[qhead++];
            if (d.edge(id).closed) continue;
            for (const PortRef& p : d.ends(id)) {
                if (p.virt) {
                    if (!virt_seen[static_cast<size_t>(p.crossing)]) {
                        virt_seen[static_cast<size_t>(p.crossing)] = true;
                        virt_order.push_back(p.crossing);
                    }
                    for (int port : d.virtuals[static_cast<size_t>(p.crossing)].port)
                        visit_edge(port);
                } else {
                    if (!cross_seen[static_cast<size_t>(p.crossing)]) {
                        cross_seen[static_cast<size_t>(p.crossing)] = true;
                        cross_order.push_back(p.crossing);
                    }
                    for (int port : d.crossings[static_cast<size_t>(p.crossing)].port)
                        visit_edge(port);
                }
            }
        }
    }
    Diagram out;
    for (int ci : cross_order) {
        Crossing c = d.crossings[static_cast<size_t>(ci)];
        for (auto& p : c.port) p = rename[p];
        out.crossings.push_back(c);
    }
    for (int vi : virt_order) {
        VirtualCrossing v = d.virtuals[static_cast<size_t>(vi)];
        for (auto& p : v.port) p = rename[p];
        out.virtuals.push_back(v);
    }
    for (const auto& e : d.edges) {
        Edge ne = e;
        ne.id = rename[e.id];
        out.edges.push_back(ne);
    }
    out.rebuild();
    return out;
}

bool isomorphic(const Diagram& a, const Diagram& b) {
    Diagram ca = canonical_form(a), cb = canonical_form(b);
    return ca.crossings == cb.crossings && ca.virtuals == cb.virtuals && ca.edges == cb.edges;
}

} // namespace kh
