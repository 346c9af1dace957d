#ifndef KH_BIGINT_HPP
#define KH_BIGINT_HPP

#include <cstdint>
#include <cstdlib>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace kh {

/// Arbitrary-precision signed integer, little-endian base-2^32 limbs.
/// Invariant: no leading zero limbs; zero has empty limb vector and sign 0.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long u = v < 0 ? 0ull - static_cast<unsigned long long>(v)
                                     : static_cast<unsigned long long>(v);
        while (u) {
            limbs_.push_back(static_cast<uint32_t>(u & 0xffffffffull));
            u >>= 32;
        }
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        int sg = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sg = -1;
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.limbs_.empty()) r.sign_ = sg;
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }
    int sign() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }

    /// True when the value fits in a signed 64-bit integer.
    bool fits_i64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long m = mag_u64();
        if (sign_ >= 0) return m <= 0x7fffffffffffffffull;
        return m <= 0x8000000000000000ull;
    }
    long long to_i64() const {
        unsigned long long m = mag_u64();
        return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return r;
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.sign_ = a.sign_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.sign_ == 0 || b.sign_ == 0) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned long long carry = 0;
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned long long cur = static_cast<unsigned long long>(a.limbs_[i]) * b.limbs_[j]
                                       + r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned long long cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffull);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        if (r.limbs_.empty()) r.sign_ = 0;
        return r;
    }

    /// Truncated division (C semantics): quotient rounds toward zero,
    /// remainder has the sign of the dividend. b must be nonzero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.limbs_, b.limbs_, qm, rm);
        q.limbs_ = std::move(qm);
        q.trim();
        q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
        r.limbs_ = std::move(rm);
        r.trim();
        r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (a.sign_ < 0) c = -c;
        return c <=> 0;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.limbs_.empty() ? 0 : 1;
        b.sign_ = b.limbs_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    /// Number of limbs; proxy for magnitude when pivoting.
    size_t limb_count() const { return limbs_.size(); }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<uint32_t> m = limbs_;
        std::string digits;
        while (!m.empty()) {
            // divide magnitude by 1e9, collect remainder
            unsigned long long rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                unsigned long long cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out;
        if (sign_ < 0) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

private:
    std::vector<uint32_t> limbs_;
    int sign_ = 0;

    unsigned long long mag_u64() const {
        unsigned long long m = 0;
        if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
        if (!limbs_.empty()) m |= limbs_[0];
        return m;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) sign_ = 0;
    }

    void mul_small(uint32_t f) {
        unsigned long long carry = 0;
        for (auto& l : limbs_) {
            unsigned long long cur = static_cast<unsigned long long>(l) * f + carry;
            l = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }
    void add_small(uint32_t v) {
        unsigned long long carry = v;
        for (size_t i = 0; carry && i < limbs_.size(); ++i) {
            unsigned long long cur = limbs_[i] + carry;
            limbs_[i] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
        if (!limbs_.empty() && sign_ == 0) sign_ = 1;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& sml = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r(big.size(), 0);
        unsigned long long carry = 0;
        for (size_t i = 0; i < big.size(); ++i) {
            unsigned long long cur = carry + big[i] + (i < sml.size() ? sml[i] : 0);
            r[i] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }
    /// Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(a.size(), 0);
        long long borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            long long cur = static_cast<long long>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) {
                cur += 1ll << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    /// Knuth algorithm D on magnitudes; |a| >= |b|, b nonzero.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            unsigned long long rem = 0;
            for (size_t i = a.size(); i-- > 0;) {
                unsigned long long cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        // normalize so the top limb of the divisor has its high bit set
        int shift = 0;
        for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
        std::vector<uint32_t> u = shl_bits(a, shift);
        std::vector<uint32_t> v = shl_bits(b, shift);
        u.push_back(0);
        size_t n = v.size(), m = u.size() - n - 1;
        q.assign(m + 1, 0);
        for (size_t j = m + 1; j-- > 0;) {
            unsigned long long num = (static_cast<unsigned long long>(u[j + n]) << 32) | u[j + n - 1];
            unsigned long long qhat = num / v[n - 1];
            unsigned long long rhat = num % v[n - 1];
            while (qhat >= (1ull << 32) ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= (1ull << 32)) break;
            }
            // multiply-subtract
            long long borrow = 0;
            unsigned long long carry = 0;
            for (size_t i = 0; i < n; ++i) {
                unsigned long long p = qhat * v[i] + carry;
                carry = p >> 32;
                long long t = static_cast<long long>(u[i + j]) - borrow - static_cast<long long>(p & 0xffffffffull);
                if (t < 0) {
                    t += 1ll << 32;
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<uint32_t>(t);
            }
            long long t = static_cast<long long>(u[j + n]) - borrow - static_cast<long long>(carry);
            if (t < 0) {
                // qhat was one too large; add divisor back
                t += 1ll << 32;
                --qhat;
                unsigned long long c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    unsigned long long cur = static_cast<unsigned long long>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
                    c2 = cur >> 32;
                }
                t += static_cast<long long>(c2);
                t &= 0xffffffffll;
            }
            u[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qhat);
        }
        u.resize(n);
        r = shr_bits(u, shift);
    }
    static std::vector<uint32_t> shl_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) return a;
        std::vector<uint32_t> r(a.size() + 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] |= a[i] << s;
            r[i + 1] = a[i] >> (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static std::vector<uint32_t> shr_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) {
            auto r = a;
            while (!r.empty() && r.back() == 0) r.pop_back();
            return r;
        }
        std::vector<uint32_t> r(a.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] >> s;
            if (i + 1 < a.size()) r[i] |= a[i + 1] << (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

} // namespace kh

#endif
