#include "kh/complex.hpp"

namespace kh {

AnyComplex build_complex_any(const Diagram& d, const TheorySpec& spec, int limit) {
    switch (spec.ring) {
        case RingId::Z2: return build_complex<Z2>(d, spec, limit);
        case RingId::Z4: return build_complex<Z4>(d, spec, limit);
        case RingId::Z: return build_complex<BigInt>(d, spec, limit);
        case RingId::Q: return build_complex<Rational>(d, spec, limit);
        case RingId::Zht: return build_complex<PolyZht>(d, spec, limit);
        case RingId::Z2tc: return build_complex<PolyZ2tc>(d, spec, limit);
    }
    throw ValidationError("unknown ring");
}

} // namespace kh
