#ifndef KH_RINGS_HPP
#define KH_RINGS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "kh/bigint.hpp"
#include "kh/rational.hpp"

namespace kh {

/// Coefficient rings supported by the engine.
enum class RingId { Z2, Z4, Z, Q, Z2tc, Zht };

inline const char* ring_name(RingId r) {
    switch (r) {
        case RingId::Z2: return "Z2";
        case RingId::Z4: return "Z4";
        case RingId::Z: return "Z";
        case RingId::Q: return "Q";
        case RingId::Z2tc: return "Z2[t,c]";
        case RingId::Zht: return "Z[h,t]";
    }
    return "?";
}

struct Z2 {
    uint8_t v = 0;
    Z2() = default;
    explicit Z2(long long x) : v(static_cast<uint8_t>(((x % 2) + 2) % 2)) {}
    friend Z2 operator+(Z2 a, Z2 b) { return Z2(a.v ^ b.v); }
    friend Z2 operator-(Z2 a, Z2 b) { return Z2(a.v ^ b.v); }
    friend Z2 operator*(Z2 a, Z2 b) { return Z2(a.v & b.v); }
    friend Z2 operator-(Z2 a) { return a; }
    friend bool operator==(Z2 a, Z2 b) { return a.v == b.v; }
    bool is_zero() const { return v == 0; }
    Z2 inverse() const {
        if (!v) throw std::domain_error("Z2: inverse of zero");
        return *this;
    }
    std::string to_string() const { return v ? "1" : "0"; }
};

struct Z4 {
    uint8_t v = 0;
    Z4() = default;
    explicit Z4(long long x) : v(static_cast<uint8_t>(((x % 4) + 4) % 4)) {}
    friend Z4 operator+(Z4 a, Z4 b) { return Z4(a.v + b.v); }
    friend Z4 operator-(Z4 a, Z4 b) { return Z4(a.v + 4 - b.v); }
    friend Z4 operator*(Z4 a, Z4 b) { return Z4(a.v * b.v); }
    friend Z4 operator-(Z4 a) { return Z4(4 - a.v); }
    friend bool operator==(Z4 a, Z4 b) { return a.v == b.v; }
    bool is_zero() const { return v == 0; }
    std::string to_string() const { return std::to_string(static_cast<int>(v)); }
};

/// Sparse bivariate polynomial with nonnegative exponents over C.
/// Exponent pair order: (e0, e1) for variables Names::var0/var1.
template <class C, class Names>
class Poly2 {
public:
    using Exp = std::pair<uint16_t, uint16_t>;

    Poly2() = default;
    explicit Poly2(long long x) {
        C c(x);
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }
    static Poly2 monomial(C c, uint16_t e0, uint16_t e1) {
        Poly2 p;
        if (!c.is_zero()) p.terms_[{e0, e1}] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Exp, C>& terms() const { return terms_; }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [e, c] : b.terms_) {
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                r.terms_.emplace(e, c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    friend Poly2 operator-(const Poly2& a) {
        Poly2 r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e{static_cast<uint16_t>(ea.first + eb.first),
                      static_cast<uint16_t>(ea.second + eb.second)};
                C c = ca * cb;
                if (c.is_zero()) continue;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(e, c);
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.to_string();
            if (!first) out += " + ";
            first = false;
            std::string mono;
            if (e.first) {
                mono += Names::var0();
                if (e.first > 1) mono += "^" + std::to_string(e.first);
            }
            if (e.second) {
                if (!mono.empty()) mono += "*";
                mono += Names::var1();
                if (e.second > 1) mono += "^" + std::to_string(e.second);
            }
            if (mono.empty()) {
                out += cs;
            } else if (cs == "1") {
                out += mono;
            } else {
                out += cs + "*" + mono;
            }
        }
        return out;
    }

private:
    std::map<Exp, C> terms_;
};

struct NamesHT {
    static const char* var0() { return "h"; }
    static const char* var1() { return "t"; }
};
struct NamesTC {
    static const char* var0() { return "t"; }
    static const char* var1() { return "c"; }
};

using PolyZht = Poly2<BigInt, NamesHT>;  // Z[h,t], deg h = 2, deg t = 4
using PolyZ2tc = Poly2<Z2, NamesTC>;     // Z2[t,c], deg t = 4, deg c = 1

/// Univariate Z2[t]; Euclidean, used for graded module homology of
/// c-free Z2[t,c] complexes. Coefficient of t^i at bit i.
class PolyZ2t {
public:
    PolyZ2t() = default;
    explicit PolyZ2t(long long x) {
        if (x % 2) coeffs_.push_back(1);
    }
    static PolyZ2t t_power(unsigned k) {
        PolyZ2t p;
        p.coeffs_.assign(k + 1, 0);
        p.coeffs_[k] = 1;
        return p;
    }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    friend PolyZ2t operator+(const PolyZ2t& a, const PolyZ2t& b) {
        PolyZ2t r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (size_t i = 0; i < r.coeffs_.size(); ++i)
            r.coeffs_[i] = (i < a.coeffs_.size() ? a.coeffs_[i] : 0) ^
                           (i < b.coeffs_.size() ? b.coeffs_[i] : 0);
        r.trim();
        return r;
    }
    friend PolyZ2t operator-(const PolyZ2t& a, const PolyZ2t& b) { return a + b; }
    friend PolyZ2t operator-(const PolyZ2t& a) { return a; }
    friend PolyZ2t operator*(const PolyZ2t& a, const PolyZ2t& b) {
        PolyZ2t r;
        if (a.is_zero() || b.is_zero()) return r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i])
                for (size_t j = 0; j < b.coeffs_.size(); ++j)
                    r.coeffs_[i + j] ^= b.coeffs_[j];
        r.trim();
        return r;
    }
    friend bool operator==(const PolyZ2t& a, const PolyZ2t& b) { return a.coeffs_ == b.coeffs_; }

    static void divmod(const PolyZ2t& a, const PolyZ2t& b, PolyZ2t& q, PolyZ2t& r) {
        if (b.is_zero()) throw std::domain_error("PolyZ2t: division by zero");
        r = a;
        q = PolyZ2t();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            unsigned shift = static_cast<unsigned>(r.degree() - b.degree());
            PolyZ2t m = t_power(shift);
            q = q + m;
            r = r + m * b;  // char 2: subtraction is addition
        }
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = coeffs_.size(); i-- > 0;) {
            if (!coeffs_[i]) continue;
            if (!out.empty()) out += " + ";
            if (i == 0) {
                out += "1";
            } else if (i == 1) {
                out += "t";
            } else {
                out += "t^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    std::vector<uint8_t> coeffs_;
    void trim() {
        while (!coeffs_.empty() && !coeffs_.back()) coeffs_.pop_back();
    }
};

// ---- ring traits ----------------------------------------------------------

template <class R>
struct RingTraits;

template <>
struct RingTraits<Z2> {
    static constexpr RingId id = RingId::Z2;
    static constexpr bool is_field = true;
    static constexpr bool char_two = true;
    static Z2 from_int(long long v) { return Z2(v); }
    static Z2 inverse(Z2 a) { return a.inverse(); }
};
template <>
struct RingTraits<Z4> {
    static constexpr RingId id = RingId::Z4;
    static constexpr bool is_field = false;
    static constexpr bool char_two = false;
    static Z4 from_int(long long v) { return Z4(v); }
};
template <>
struct RingTraits<BigInt> {
    static constexpr RingId id = RingId::Z;
    static constexpr bool is_field = false;
    static constexpr bool char_two = false;
    static BigInt from_int(long long v) { return BigInt(v); }
};
template <>
struct RingTraits<Rational> {
    static constexpr RingId id = RingId::Q;
    static constexpr bool is_field = true;
    static constexpr bool char_two = false;
    static Rational from_int(long long v) { return Rational(v); }
    static Rational inverse(const Rational& a) { return a.inverse(); }
};
template <>
struct RingTraits<PolyZht> {
    static constexpr RingId id = RingId::Zht;
    static constexpr bool is_field = false;
    static constexpr bool char_two = false;
    static PolyZht from_int(long long v) { return PolyZht(v); }
};
template <>
struct RingTraits<PolyZ2tc> {
    static constexpr RingId id = RingId::Z2tc;
    static constexpr bool is_field = false;
    static constexpr bool char_two = true;
    static PolyZ2tc from_int(long long v) { return PolyZ2tc(v); }
};

} // namespace kh

#endif
