#ifndef KH_LAURENT_HPP
#define KH_LAURENT_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kh/bigint.hpp"

namespace kh {

/// Sparse multivariate Laurent polynomial: exponent vectors over a declared
/// variable list, arbitrary-precision integer coefficients. No zero
/// coefficients are stored. Canonical text form sorts terms lexicographically
/// by exponent vector.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static LaurentPoly constant(BigInt c, std::vector<std::string> vars = {}) {
        LaurentPoly p(std::move(vars));
        if (!c.is_zero()) p.terms_[std::vector<int>(p.vars_.size(), 0)] = std::move(c);
        return p;
    }
    /// Single term c * var^e for a one-variable polynomial.
    static LaurentPoly monomial(BigInt c, const std::string& var, int e) {
        LaurentPoly p({var});
        if (!c.is_zero()) p.terms_[{e}] = std::move(c);
        return p;
    }
    static LaurentPoly term(BigInt c, std::vector<std::string> vars, std::vector<int> exps) {
        LaurentPoly p(std::move(vars));
        if (!c.is_zero()) p.terms_[std::move(exps)] = std::move(c);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exps, const BigInt& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        auto [ra, rb] = unify(a, b);
        for (const auto& [e, c] : rb.terms_) ra.add_term(e, c);
        return ra;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        auto [ra, rb] = unify(a, b);
        LaurentPoly out(ra.vars_);
        for (const auto& [ea, ca] : ra.terms_)
            for (const auto& [eb, cb] : rb.terms_) {
                std::vector<int> e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        auto [ra, rb] = unify(a, b);
        return ra.terms_ == rb.terms_;
    }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly r = constant(BigInt(1), vars_);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Substitute a variable by a polynomial (negative exponents require the
    /// substituted value to be a single invertible monomial or use pow of the
    /// formal inverse supplied by the caller via `inv`).
    LaurentPoly substitute(const std::string& var, const LaurentPoly& value,
                           const LaurentPoly& inv) const {
        size_t idx = var_index(var);
        LaurentPoly out;
        for (const auto& [e, c] : terms_) {
            std::vector<int> rest = e;
            int k = rest[idx];
            rest[idx] = 0;
            std::vector<std::string> rvars = vars_;
            LaurentPoly base = term(c, rvars, rest);
            LaurentPoly factor = k >= 0 ? value.pow(static_cast<unsigned>(k))
                                        : inv.pow(static_cast<unsigned>(-k));
            out = out + base * factor;
        }
        return out.drop_unused(var);
    }

    /// Max minus min exponent of `var` over the support (0 for 0 or constants).
    int span(const std::string& var) const {
        if (terms_.empty()) return 0;
        size_t idx = var_index(var);
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) {
                lo = hi = e[idx];
                first = false;
            } else {
                lo = std::min(lo, e[idx]);
                hi = std::max(hi, e[idx]);
            }
        }
        return hi - lo;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt coeff = c;
            if (first) {
                if (coeff.is_negative()) {
                    out += "-";
                    coeff = -coeff;
                }
            } else {
                out += coeff.is_negative() ? " - " : " + ";
                if (coeff.is_negative()) coeff = -coeff;
            }
            first = false;
            std::string mono;
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += coeff.to_string();
            } else if (coeff.is_one()) {
                out += mono;
            } else {
                out += coeff.to_string() + "*" + mono;
            }
        }
        return out;
    }

private:
    std::vector<std::string> vars_;
    std::map<std::vector<int>, BigInt> terms_;

    size_t var_index(const std::string& var) const {
        auto it = std::find(vars_.begin(), vars_.end(), var);
        if (it == vars_.end()) throw std::invalid_argument("LaurentPoly: unknown variable " + var);
        return static_cast<size_t>(it - vars_.begin());
    }

    LaurentPoly drop_unused(const std::string& var) const {
        size_t idx;
        auto it = std::find(vars_.begin(), vars_.end(), var);
        if (it == vars_.end()) return *this;
        idx = static_cast<size_t>(it - vars_.begin());
        for (const auto& [e, c] : terms_)
            if (e[idx] != 0) return *this;  // still used, keep
        LaurentPoly out;
        out.vars_ = vars_;
        out.vars_.erase(out.vars_.begin() + static_cast<long>(idx));
        for (const auto& [e, c] : terms_) {
            std::vector<int> r = e;
            r.erase(r.begin() + static_cast<long>(idx));
            out.terms_[r] = c;
        }
        return out;
    }

    /// Rewrite both operands over the union of their variable lists.
    static std::pair<LaurentPoly, LaurentPoly> unify(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> all = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
        std::sort(all.begin(), all.end());
        return {a.reindex(all), b.reindex(all)};
    }
    LaurentPoly reindex(const std::vector<std::string>& all) const {
        LaurentPoly out(all);
        std::vector<size_t> pos(vars_.size());
        for (size_t i = 0; i < vars_.size(); ++i)
            pos[i] = static_cast<size_t>(
                std::find(all.begin(), all.end(), vars_[i]) - all.begin());
        for (const auto& [e, c] : terms_) {
            std::vector<int> ne(all.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            out.terms_[ne] = c;
        }
        return out;
    }
};

} // namespace kh

#endif
