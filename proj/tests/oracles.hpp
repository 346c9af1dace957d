#ifndef KH_TESTS_ORACLES_HPP
#define KH_TESTS_ORACLES_HPP

// Independent brute-force oracles, written before the engine they check.
// Circle counting goes through union-find over crossing slots rather than the
// engine's cycle walk; polynomials are plain exponent->int64 maps.

#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kh/diagram.hpp"

namespace oracle {

using Poly1 = std::map<int, long long>;  // exponent -> coefficient

inline void add(Poly1& p, int e, long long c) {
    p[e] += c;
    if (p[e] == 0) p.erase(e);
}
inline Poly1 mul(const Poly1& a, const Poly1& b) {
    Poly1 r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) add(r, ea + eb, ca * cb);
    return r;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<size_t>(x)] != x) x = p[static_cast<size_t>(x)] =
                                                    p[static_cast<size_t>(p[static_cast<size_t>(x)])];
        return x;
    }
    void unite(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

/// Circle count of one state by union-find: nodes are crossing slots; edges
/// and smoothings merge them. Independent of kh::trace_state.
inline int circle_count(const kh::Diagram& d, uint32_t smoothing) {
    int nc = static_cast<int>(d.crossings.size());
    int nv = static_cast<int>(d.virtuals.size());
    UnionFind uf(static_cast<size_t>(4 * (nc + nv)));
    auto node = [&](bool virt, int ci, int slot) { return 4 * (virt ? nc + ci : ci) + slot; };

    int free_loops = 0;
    for (const auto& e : d.edges) {
        if (e.closed) {
            ++free_loops;
            continue;
        }
        const auto& ends = d.ends(e.id);
        uf.unite(node(ends[0].virt, ends[0].crossing, ends[0].slot),
                 node(ends[1].virt, ends[1].crossing, ends[1].slot));
    }
    for (int ci = 0; ci < nc; ++ci) {
        bool b = (smoothing >> ci) & 1u;
        if (b) {
            uf.unite(node(false, ci, 0), node(false, ci, 3));
            uf.unite(node(false, ci, 1), node(false, ci, 2));
        } else {
            uf.unite(node(false, ci, 0), node(false, ci, 1));
            uf.unite(node(false, ci, 2), node(false, ci, 3));
        }
    }
    for (int vi = 0; vi < nv; ++vi) {
        uf.unite(node(true, vi, 0), node(true, vi, 2));
        uf.unite(node(true, vi, 1), node(true, vi, 3));
    }
    std::vector<int> roots;
    for (int ci = 0; ci < nc; ++ci)
        for (int s = 0; s < 4; ++s) roots.push_back(uf.find(node(false, ci, s)));
    for (int vi = 0; vi < nv; ++vi)
        for (int s = 0; s < 4; ++s) roots.push_back(uf.find(node(true, vi, s)));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size()) + free_loops;
}

/// Brute-force Kauffman bracket over all 2^n states.
inline Poly1 bracket(const kh::Diagram& d) {
    Poly1 acc;
    int n = static_cast<int>(d.crossings.size());
    Poly1 loop;  // -a^2 - a^-2
    add(loop, 2, -1);
    add(loop, -2, -1);
    for (uint32_t s = 0; s < (1u << n); ++s) {
        int beta = __builtin_popcount(s);
        int alpha = n - beta;
        int gamma = circle_count(d, s);
        Poly1 term;
        add(term, alpha - beta, 1);
        for (int i = 0; i < gamma - 1; ++i) term = mul(term, loop);
        for (auto& [e, c] : term) add(acc, e, c);
    }
    return acc;
}

inline std::string poly_str(const Poly1& p) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [e, c] : p) {
        out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        long long a = c < 0 ? -c : c;
        if (a != 1 || e == 0) out << a;
        if (e != 0) {
            if (a != 1) out << "*";
            out << "a";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline kh::Diagram load(const std::string& name) {
    return kh::parse_diagram(read_file(std::string(KH_CORPUS_DIR) + "/" + name));
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "unknot.kd",      "kink_pos.kd",     "kink_neg.kd",      "hopf.kd",
        "trefoil_right.kd", "trefoil_left.kd", "figure8.kd",       "virtual_trefoil.kd",
        "kishino.kd",     "unknot_bar.kd",   "braid2_closed.kd", "braid3_closed.kd",
        "trefoil_long.kd"};
    return names;
}

} // namespace oracle

// ---- exact elimination / SNF oracles (independent of kh::linalg) ----------

namespace oracle {

struct Frac {
    long long n = 0, d = 1;
    static long long g(long long a, long long b) {
        a = a < 0 ? -a : a;
        b = b < 0 ? -b : b;
        while (b) {
            long long t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    void reduce() {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long k = g(n < 0 ? -n : n, d);
        if (k > 1) {
            n /= k;
            d /= k;
        }
        if (n == 0) d = 1;
    }
    Frac() = default;
    Frac(long long v) : n(v), d(1) {}
    Frac(long long a, long long b) : n(a), d(b) { reduce(); }
    friend Frac operator+(Frac a, Frac b) { return Frac(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Frac operator-(Frac a, Frac b) { return Frac(a.n * b.d - b.n * a.d, a.d * b.d); }
    friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
    friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
    bool zero() const { return n == 0; }
};

/// Exact rank over Q by naive fraction elimination.
inline int rank_q(std::vector<std::vector<Frac>> m) {
    int rank = 0;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t piv = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (!m[r][c].zero()) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[piv]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || m[r][c].zero()) continue;
            Frac f = m[r][c] / m[static_cast<size_t>(rank)][c];
            for (size_t j = 0; j < cols; ++j)
                m[r][j] = m[r][j] - f * m[static_cast<size_t>(rank)][j];
        }
        ++rank;
    }
    return rank;
}

/// Rank over Z2 by bitset elimination.
inline int rank_z2(std::vector<std::vector<int>> m) {
    int rank = 0;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t piv = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (m[r][c] & 1) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[piv]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || !(m[r][c] & 1)) continue;
            for (size_t j = 0; j < cols; ++j) m[r][j] ^= m[static_cast<size_t>(rank)][j];
        }
        ++rank;
    }
    return rank;
}

/// Smith normal form over Z with int64 entries; returns nonzero diagonal.
inline std::vector<long long> snf_int(std::vector<std::vector<long long>> m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<long long> diag;
    size_t r = 0;
    while (r < rows && r < cols) {
        size_t pi = rows, pj = cols;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = r; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[r], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][r], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (!m[i][r]) continue;
                long long q = m[i][r] / m[r][r];
                for (size_t j = r; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][r]) {
                    std::swap(m[r], m[i]);
                    clean = false;
                }
            }
            for (size_t j = r + 1; j < cols; ++j) {
                if (!m[r][j]) continue;
                long long q = m[r][j] / m[r][r];
                for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][r];
                if (m[r][j]) {
                    for (size_t i = r; i < rows; ++i) std::swap(m[i][r], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(std::llabs(m[r][r]));
        ++r;
    }
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            long long g = Frac::g(diag[i], diag[j]);
            if (g) {
                long long l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    return diag;
}

} // namespace oracle

#endif
