#ifndef KH_BRACKET_HPP
#define KH_BRACKET_HPP

#include "kh/diagram.hpp"
#include "kh/laurent.hpp"
#include "kh/theory.hpp"

namespace kh {

/// Kauffman bracket, sum over states of a^(alpha-beta) (-a^2-a^-2)^(gamma-1).
/// Parallel over state indices; the serial variant is the reference kept for
/// testing and the benchmark.
LaurentPoly kauffman_bracket(const Diagram& d, int limit = 20);
LaurentPoly kauffman_bracket_serial(const Diagram& d, int limit = 20);

/// (-a)^(-3w) * bracket; requires an oriented diagram.
LaurentPoly jones_normalized(const Diagram& d, int limit = 20);

struct BourgoinBracket {
    LaurentPoly raw;         // verbatim two-variable state sum in a, M
    LaurentPoly normalized;  // raw / (-a^2 - a^-2) when exactly divisible, else raw
    bool divisible;
};

/// Two-variable bracket: sum of a^(alpha-beta) M^(gamma'') (-a^2-a^-2)^(gamma')
/// with gamma'' counting bar-odd (non-orienting) circles.
BourgoinBracket bourgoin_bracket(const Diagram& d, int limit = 20);

/// Khovanov-side state sum in q (and one grading variable per dotting source):
/// sum_s (-q)^beta * prod over circles of (q * prod g^-1 + q^-1 * prod g),
/// times the (-1)^(n_-) q^(n_+ - 2n_-) normalization when `normalize`.
/// This is the graded Euler characteristic the complex must reproduce.
LaurentPoly substituted_bracket(const Diagram& d, const DottingConfig& dots,
                                bool normalize = true, int limit = 20);

/// Exact division in the Laurent ring by a polynomial in `var`;
/// returns false and leaves `out` untouched when not divisible.
bool exact_divide(const LaurentPoly& num, const LaurentPoly& den, const std::string& var,
                  LaurentPoly& out);

} // namespace kh

#endif
