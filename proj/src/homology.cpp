#include "kh/homology.hpp"

#include <algorithm>

namespace kh {

HomologyTable homology_integral(const GradedComplex<BigInt>& c, RetainSpec retain) {
    HomologyTable table;
    table.retain = retain;
    table.axes.push_back("i");
    if (retain.q) table.axes.push_back("j");
    if (retain.dotted)
        for (const auto& s : c.sources) table.axes.push_back("g_" + s.name());
    if (retain.gr) table.axes.push_back("gr2");

    int H = c.heights();
    std::vector<std::map<std::vector<int>, int>> dims(static_cast<size_t>(H));
    for (int b = 0; b < H; ++b)
        for (const auto& g : c.gens[static_cast<size_t>(b)]) {
            dims[static_cast<size_t>(b)][detail::degree_key(g, retain, false)]++;
            table.chain_dim++;
        }
    // Smith form per blocked differential: rank and invariant factors.
    struct SNF {
        int rank = 0;
        std::vector<BigInt> torsion;  // factors > 1
    };
    std::vector<std::map<std::vector<int>, SNF>> snfs(static_cast<size_t>(H));
    for (int b = 0; b + 1 < H; ++b) {
        for (const auto& [key, dim] : dims[static_cast<size_t>(b)]) {
            std::vector<int> cols;
            int rows = 0;
            Dense<BigInt> m =
                detail::block_matrix(c, static_cast<size_t>(b), key, retain, cols, rows);
            if (rows == 0 || cols.empty()) continue;
            auto diag = smith_normal_form(std::move(m));
            SNF s;
            s.rank = static_cast<int>(diag.size());
            for (const auto& d : diag)
                if (!EuclideanTraits<BigInt>::is_unit(d)) s.torsion.push_back(d);
            if (s.rank) snfs[static_cast<size_t>(b)][key] = std::move(s);
            table.rank_sum += static_cast<long long>(diag.size());
        }
    }
    for (int b = 0; b < H; ++b) {
        for (const auto& [key, dim] : dims[static_cast<size_t>(b)]) {
            int out_rank = 0, in_rank = 0;
            std::vector<BigInt> torsion;
            auto it = snfs[static_cast<size_t>(b)].find(key);
            if (it != snfs[static_cast<size_t>(b)].end()) out_rank = it->second.rank;
            if (b > 0) {
                auto jt = snfs[static_cast<size_t>(b - 1)].find(key);
                if (jt != snfs[static_cast<size_t>(b - 1)].end()) {
                    in_rank = jt->second.rank;
                    torsion = jt->second.torsion;
                }
            }
            int free_rank = dim - out_rank - in_rank;
            if (free_rank < 0) throw std::logic_error("negative free rank; blocked d^2 != 0?");
            if (free_rank > 0 || !torsion.empty()) {
                int i = c.gens[static_cast<size_t>(b)].empty()
                            ? b + c.height_shift
                            : c.gens[static_cast<size_t>(b)][0].height;
                std::vector<int> full{i};
                full.insert(full.end(), key.begin(), key.end());
                auto& grp = table.groups[full];
                grp.free_rank = free_rank;
                for (const auto& t : torsion) grp.torsion.push_back(t.to_string());
            }
        }
    }
    return table;
}

bool has_c_entries(const GradedComplex<PolyZ2tc>& c) {
    for (const auto& m : c.diff)
        for (const auto& e : m.entries)
            for (const auto& [exp, coeff] : e.value.terms())
                if (exp.second % 2 != 0) return true;
    return false;
}

Z2tcHalfIntegerReport z2tc_half_integer_report(const GradedComplex<PolyZ2tc>& c, int window) {
    Z2tcHalfIntegerReport rep;
    rep.c_free_differential = !has_c_entries(c);

    // Quantum degrees in the deg(1)=+1 convention: t drops j by 4, c by 1.
    int jmin = 0, jmax = 0;
    bool first = true;
    for (const auto& level : c.gens)
        for (const auto& g : level) {
            if (first) jmin = jmax = g.qdeg;
            jmin = std::min(jmin, g.qdeg);
            jmax = std::max(jmax, g.qdeg);
            first = false;
        }
    if (first) return rep;

    // Block basis of height b at quantum degree j, split by c parity:
    // (generator index, t exp, c exp) with qdeg - 4t - c == j.
    struct Blocks {
        std::vector<std::tuple<int, int, int>> even, odd;
    };
    auto block_basis = [&](int b, int j) {
        Blocks out;
        const auto& gs = c.gens[static_cast<size_t>(b)];
        for (size_t gi = 0; gi < gs.size(); ++gi) {
            int d = gs[gi].qdeg - j;
            if (d < 0) continue;
            for (int t = 0; 4 * t <= d; ++t) {
                int ce = d - 4 * t;
                (ce % 2 == 0 ? out.even : out.odd)
                    .emplace_back(static_cast<int>(gi), t, ce);
            }
        }
        return out;
    };
    // Z2 rank of the blocked differential between two monomial bases.
    auto block_rank = [&](int b, const std::vector<std::tuple<int, int, int>>& cols,
                          const std::vector<std::tuple<int, int, int>>& rows) {
        if (cols.empty() || rows.empty() || b >= static_cast<int>(c.diff.size())) return 0;
        std::map<std::tuple<int, int, int>, int> rpos;
        for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
        Dense<Z2> m(rows.size(), std::vector<Z2>(cols.size(), Z2(0)));
        std::map<int, std::vector<std::pair<int, std::pair<int, int>>>> by_col;
        for (const auto& e : c.diff[static_cast<size_t>(b)].entries)
            for (const auto& [exp, coeff] : e.value.terms())
                by_col[e.col].push_back({e.row, {exp.first, exp.second}});
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            auto [gi, te, ce] = cols[ci];
            auto it = by_col.find(gi);
            if (it == by_col.end()) continue;
            for (const auto& [row_gen, mono] : it->second) {
                auto key = std::make_tuple(row_gen, te + mono.first, ce + mono.second);
                auto rit = rpos.find(key);
                if (rit != rpos.end())
                    m[static_cast<size_t>(rit->second)][ci] =
                        m[static_cast<size_t>(rit->second)][ci] + Z2(1);
            }
        }
        return gauss_rank(std::move(m));
    };

    int H = c.heights();
    auto dim_h = [&](int b, int j, bool odd) {
        Blocks here = block_basis(b, j);
        const auto& basis = odd ? here.odd : here.even;
        int out_rank = 0, in_rank = 0;
        if (b + 1 < H) {
            Blocks up = block_basis(b + 1, j);
            out_rank = block_rank(b, basis, odd ? up.odd : up.even);
        }
        if (b > 0) {
            Blocks dn = block_basis(b - 1, j);
            in_rank = block_rank(b - 1, odd ? dn.odd : dn.even, basis);
        }
        return static_cast<int>(basis.size()) - out_rank - in_rank;
    };

    for (int b = 0; b < H; ++b) {
        int i = c.gens[static_cast<size_t>(b)].empty()
                    ? b + c.height_shift
                    : c.gens[static_cast<size_t>(b)][0].height;
        for (int j = jmax; j >= jmin - window; --j) {
            int de = dim_h(b, j, false);
            int doo = dim_h(b, j, true);
            if (de) rep.even_dims[{i, j}] = de;
            if (doo) rep.odd_dims[{i, j}] = doo;
            if (rep.c_free_differential) {
                // c * (even part of j+1) should be the odd part of j
                if (j + 1 <= jmax && doo != dim_h(b, j + 1, false)) rep.parity_match = false;
            }
        }
    }
    if (!rep.c_free_differential) rep.parity_match = false;
    return rep;
}

LaurentPoly poincare_polynomial(const HomologyTable& t) {
    std::vector<std::string> vars{"T"};
    for (size_t a = 1; a < t.axes.size(); ++a)
        vars.push_back(t.axes[a] == "j" ? std::string("q") : t.axes[a]);
    LaurentPoly acc(vars);
    for (const auto& [key, grp] : t.groups) {
        if (grp.free_rank == 0) continue;
        std::vector<int> exps(vars.size(), 0);
        for (size_t a = 0; a < key.size() && a < exps.size(); ++a) exps[a] = key[a];
        acc.add_term(exps, BigInt(grp.free_rank));
    }
    return acc;
}

BoundsReport report_bounds(const HomologyTable& t, const Diagram& d, int limit) {
    BoundsReport rep;
    rep.atom_genus = atom_genus(d);

    // thickness: occupied diagonals j - 2i, when j is retained
    size_t j_axis = 0;
    for (size_t a = 0; a < t.axes.size(); ++a)
        if (t.axes[a] == "j") j_axis = a;
    if (j_axis > 0) {
        std::vector<int> diags;
        for (const auto& [key, grp] : t.groups) {
            if (grp.free_rank == 0 && grp.torsion.empty()) continue;
            diags.push_back(key[j_axis] - 2 * key[0]);
        }
        std::sort(diags.begin(), diags.end());
        diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
        rep.occupied_diagonals = static_cast<int>(diags.size());
        // Slope-2 diagonals are spaced 2 apart on orientable atoms; on odd
        // Euler characteristic the two parity families interleave, so the
        // band width (c_max - c_min)/2 + 1 is the count the estimate bounds.
        rep.thickness =
            diags.empty() ? 0 : (diags.back() - diags.front() + 1) / 2 + 1;
        rep.thickness_ok = rep.thickness <= 2 + rep.atom_genus;
    }

    rep.span = kauffman_bracket(d, limit).span("a");
    rep.span_bound = 4 * d.n();
    rep.span_ok = rep.span <= rep.span_bound;

    // homological length
    bool first = true;
    int lo = 0, hi = 0;
    for (const auto& [key, grp] : t.groups) {
        if (grp.free_rank == 0 && grp.torsion.empty()) continue;
        if (first) {
            lo = hi = key[0];
            first = false;
        }
        lo = std::min(lo, key[0]);
        hi = std::max(hi, key[0]);
    }
    rep.homological_length = first ? 0 : hi - lo;
    rep.length_ok = rep.homological_length <= d.n();

    // destabilisation obstruction: the additional-grading vectors of nonzero
    // groups span R^k (no hyperplane through zero contains them all)
    size_t first_extra = 1 + (j_axis > 0 ? 1 : 0);
    size_t k = t.axes.size() - first_extra;
    if (t.axes.size() > first_extra && t.axes.back() == "gr2") --k;  // gr is not a cohomology axis
    if (k > 0) {
        Dense<Rational> vecs;
        for (const auto& [key, grp] : t.groups) {
            if (grp.free_rank == 0 && grp.torsion.empty()) continue;
            std::vector<Rational> v;
            for (size_t a = 0; a < k; ++a)
                v.push_back(Rational(key[first_extra + a]));
            vecs.push_back(std::move(v));
        }
        rep.grading_count = static_cast<int>(k);
        rep.grading_rank = vecs.empty() ? 0 : gauss_rank(std::move(vecs));
        rep.destabilisation_obstruction = rep.grading_rank == static_cast<int>(k);
    }
    return rep;
}

} // namespace kh
