#ifndef KH_DIAGRAM_HPP
#define KH_DIAGRAM_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kh {

/// Parse failure with source position.
struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Site token carried on an edge, in order along the edge.
struct Site {
    enum class Kind { Bar, Marker };
    Kind kind;
    int marker_set = -1;  // for Kind::Marker
    friend bool operator==(const Site&, const Site&) = default;
};

/// Classical crossing. Ports hold edge ids counterclockwise from the
/// incoming underpass: port 0 = under-in, 2 = under-out, {1,3} = overpass.
/// sign +1 means the over-strand runs port 3 -> port 1.
struct Crossing {
    std::array<int, 4> port;
    int sign;  // +1 or -1
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Virtual crossing: projection artefact. Strands connect ports 0-2 and 1-3.
struct VirtualCrossing {
    std::array<int, 4> port;
    friend bool operator==(const VirtualCrossing&, const VirtualCrossing&) = default;
};

struct Edge {
    int id;
    bool closed = false;  // zero-crossing component ("U" record)
    std::vector<Site> sites;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Where an edge end attaches: crossing list (classical or virtual) + slot.
struct PortRef {
    bool virt;
    int crossing;  // index into crossings/virtuals
    int slot;      // 0..3
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

class Diagram {
public:
    std::vector<Crossing> crossings;
    std::vector<VirtualCrossing> virtuals;
    std::vector<Edge> edges;  // sorted by id

    int n() const { return static_cast<int>(crossings.size()); }

    const Edge& edge(int id) const;
    Edge& edge(int id);
    bool has_edge(int id) const;

    /// Both attachment points of edge id, in (tail, head) order; empty for
    /// closed components. Tail = first occurrence in file/port scan order.
    const std::array<PortRef, 2>& ends(int id) const;

    /// Number of link components (closed loops of the underlying curve).
    int components() const;
    /// Component index (0-based, ordered by minimal edge id) of an edge.
    int component_of(int edge_id) const;

    /// Orientation flags per component: true = as written, false = reversed,
    /// nullopt = unoriented. Parsing orients every coherently written
    /// component as written.
    const std::vector<std::optional<bool>>& orientations() const { return orient_; }
    void set_orientation(int component, std::optional<bool> o);

    /// True when the strand flow through the edge runs tail-to-head (decided
    /// by the first classical port the walk meets; true for fully virtual
    /// components). Closed edges flow forward.
    bool flow_forward(int edge_id) const;

    /// Marker set indices present, validated contiguous 0..k_max (-1 if none).
    int max_marker_set() const { return max_marker_; }
    bool has_bars() const;

    int fresh_edge_id() const;

    /// Re-derives incidence indices after structural surgery; throws
    /// ValidationError on inconsistent incidence.
    void rebuild();

private:
    friend Diagram parse_diagram(const std::string&);
    std::vector<std::array<PortRef, 2>> ends_;       // parallel to edges
    std::vector<int> edge_component_;                // parallel to edges
    std::vector<std::optional<bool>> orient_;
    std::vector<bool> coherent_;                     // per component
    int max_marker_ = -1;
    int edge_index(int id) const;
};

/// Parse the diagram file format: `X a b c d s`, `V a b c d`, `U e`,
/// `B e`, `M k e`, `#` comments. Numbers are edge ids; every edge id
/// appears exactly twice among crossing ports (or is declared with U).
Diagram parse_diagram(const std::string& text);

/// Inverse of parse_diagram up to isomorphic token layout:
/// parse_diagram(serialize(d)) == d.
std::string serialize(const Diagram& d);

/// Sum of crossing signs under the current orientation flags.
/// Throws ValidationError if some component is unoriented.
int writhe(const Diagram& d);

/// Positive / negative crossing counts (same precondition as writhe).
std::pair<int, int> crossing_signs(const Diagram& d);

/// Genus of the atom surface carried by the diagram. Euler characteristic
/// chi = gamma(all-A) + gamma(all-B) - n; even chi reports orientable genus
/// (2-2g = chi), odd chi forces a non-orientable atom and reports its
/// crosscap number (2-g = chi).
int atom_genus(const Diagram& d);

/// Canonical breadth-first relabeling from the lowest edge id; two diagrams
/// are isomorphic iff their canonical forms compare equal.
Diagram canonical_form(const Diagram& d);
bool isomorphic(const Diagram& a, const Diagram& b);

} // namespace kh

#endif
