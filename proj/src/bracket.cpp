#include "kh/bracket.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kh {

namespace {

void check_limit(const Diagram& d, int limit) {
    if (d.n() > limit)
        throw CubeLimitError("diagram has " + std::to_string(d.n()) +
                             " crossings; cube limit is " + std::to_string(limit));
}

LaurentPoly loop_factor() {
    LaurentPoly f = LaurentPoly::monomial(BigInt(-1), "a", 2);
    f.add_term({-2}, BigInt(-1));
    return f;
}

// One Kauffman term: a^(alpha-beta) (-a^2-a^-2)^(gamma-1).
LaurentPoly state_term(const Diagram& d, uint32_t s) {
    State st = trace_state(d, s);
    LaurentPoly t = LaurentPoly::monomial(BigInt(1), "a", st.alpha - st.beta);
    return t * loop_factor().pow(static_cast<unsigned>(st.gamma() - 1));
}

} // namespace

LaurentPoly kauffman_bracket_serial(const Diagram& d, int limit) {
    check_limit(d, limit);
    LaurentPoly acc({"a"});
    size_t total = size_t{1} << d.n();
    for (size_t s = 0; s < total; ++s) acc = acc + state_term(d, static_cast<uint32_t>(s));
    return acc;
}

LaurentPoly kauffman_bracket(const Diagram& d, int limit) {
    check_limit(d, limit);
    long long total = 1ll << d.n();
    LaurentPoly acc({"a"});
#ifdef _OPENMP
#pragma omp parallel
    {
        LaurentPoly local({"a"});
#pragma omp for schedule(dynamic, 256) nowait
        for (long long s = 0; s < total; ++s)
            local = local + state_term(d, static_cast<uint32_t>(s));
#pragma omp critical(kh_bracket_merge)
        acc = acc + local;
    }
#else
    for (long long s = 0; s < total; ++s) acc = acc + state_term(d, static_cast<uint32_t>(s));
#endif
    return acc;
}

LaurentPoly jones_normalized(const Diagram& d, int limit) {
    int w = writhe(d);
    LaurentPoly norm = LaurentPoly::monomial(BigInt(w % 2 == 0 ? 1 : -1), "a", -3 * w);
    return norm * kauffman_bracket(d, limit);
}

BourgoinBracket bourgoin_bracket(const Diagram& d, int limit) {
    check_limit(d, limit);
    long long total = 1ll << d.n();
    LaurentPoly acc;
    LaurentPoly loop = loop_factor();
#ifdef _OPENMP
#pragma omp parallel
    {
        LaurentPoly local;
#pragma omp for schedule(dynamic, 256) nowait
        for (long long s = 0; s < total; ++s) {
            State st = trace_state(d, static_cast<uint32_t>(s));
            int non_orienting = 0;
            for (const Circle& c : st.circles) non_orienting += c.bar_parity;
            int orienting = st.gamma() - non_orienting;
            LaurentPoly t =
                LaurentPoly::term(BigInt(1), {"M", "a"}, {non_orienting, st.alpha - st.beta});
            local = local + t * loop.pow(static_cast<unsigned>(orienting));
        }
#pragma omp critical(kh_boubr_merge)
        acc = acc + local;
    }
#else
    for (long long s = 0; s < total; ++s) {
        State st = trace_state(d, static_cast<uint32_t>(s));
        int non_orienting = 0;
        for (const Circle& c : st.circles) non_orienting += c.bar_parity;
        int orienting = st.gamma() - non_orienting;
        LaurentPoly t =
            LaurentPoly::term(BigInt(1), {"M", "a"}, {non_orienting, st.alpha - st.beta});
        acc = acc + t * loop.pow(static_cast<unsigned>(orienting));
    }
#endif
    BourgoinBracket out;
    out.raw = acc;
    out.divisible = exact_divide(acc, loop, "a", out.normalized);
    if (!out.divisible) out.normalized = acc;
    return out;
}

LaurentPoly substituted_bracket(const Diagram& d, const DottingConfig& dots, bool normalize,
                                int limit) {
    check_limit(d, limit);
    auto sources = dots.sources();
    std::vector<std::string> vars{"q"};
    for (const auto& s : sources) vars.push_back("g_" + s.name());

    long long total = 1ll << d.n();
    LaurentPoly acc(vars);
    for (long long s = 0; s < total; ++s) {
        State st = trace_state(d, static_cast<uint32_t>(s), dots.integral_set);
        LaurentPoly term =
            LaurentPoly::constant(BigInt(st.beta % 2 == 0 ? 1 : -1), vars) *
            LaurentPoly::monomial(BigInt(1), "q", st.beta);
        for (const Circle& c : st.circles) {
            // (q * prod g^-1 + q^-1 * prod g) over the sources dotting c.
            std::vector<int> lo(vars.size(), 0), hi(vars.size(), 0);
            lo[0] = 1;
            hi[0] = -1;
            for (size_t k = 0; k < sources.size(); ++k)
                if (circle_dot(c, sources[k])) {
                    lo[k + 1] = -1;
                    hi[k + 1] = 1;
                }
            LaurentPoly f = LaurentPoly::term(BigInt(1), vars, lo);
            f.add_term(hi, BigInt(1));
            term = term * f;
        }
        acc = acc + term;
    }
    if (normalize) {
        auto [np, nm] = crossing_signs(d);
        acc = acc * LaurentPoly::constant(BigInt(nm % 2 == 0 ? 1 : -1), vars) *
              LaurentPoly::monomial(BigInt(1), "q", np - 2 * nm);
    }
    return acc;
}

bool exact_divide(const LaurentPoly& num, const LaurentPoly& den, const std::string& var,
                  LaurentPoly& out) {
    if (den.is_zero()) return false;
    if (num.is_zero()) {
        out = num;
        return true;
    }
    auto deg_range = [&](const LaurentPoly& p) {
        size_t idx = 0;
        bool found = false;
        for (size_t i = 0; i < p.vars().size(); ++i)
            if (p.vars()[i] == var) {
                idx = i;
                found = true;
            }
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            int d = found ? e[idx] : 0;
            if (first) lo = hi = d;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            first = false;
        }
        return std::pair<int, int>(lo, hi);
    };
    auto [nlo, nhi] = deg_range(num);
    auto [dlo, dhi] = deg_range(den);

    // Leading terms of den in `var`, inverted; needs a single +-1 monomial
    // on top (true for the loop value -a^2 - a^-2).
    LaurentPoly lead_inv;
    {
        size_t idx = 0;
        for (size_t i = 0; i < den.vars().size(); ++i)
            if (den.vars()[i] == var) idx = i;
        int count = 0;
        for (const auto& [e, c] : den.terms())
            if (e[idx] == dhi) {
                ++count;
                if (!(c.is_one() || (-c).is_one())) return false;
                std::vector<int> inv = e;
                for (auto& x : inv) x = -x;
                lead_inv = LaurentPoly::term(c, den.vars(), inv);  // c == c^-1
            }
        if (count != 1) return false;
    }

    LaurentPoly rem = num, quot;
    while (!rem.is_zero()) {
        auto [rlo, rhi] = deg_range(rem);
        if (rhi - dhi < nlo - dlo) return false;  // below any exact quotient
        size_t idx = 0;
        for (size_t i = 0; i < rem.vars().size(); ++i)
            if (rem.vars()[i] == var) idx = i;
        LaurentPoly top(rem.vars());
        for (const auto& [e, c] : rem.terms())
            if (e[idx] == rhi) top.add_term(e, c);
        LaurentPoly chunk = top * lead_inv;
        quot = quot + chunk;
        rem = rem - chunk * den;
        auto [xlo, xhi] = deg_range(rem);
        if (!rem.is_zero() && xhi >= rhi) return false;  // no progress
    }
    out = quot;
    return true;
}

} // namespace kh
