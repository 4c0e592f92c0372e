#include "polarcover/rng.hpp"

#include "polarcover/errors.hpp"

namespace polarcover {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::usage, "Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream ^ 0x5eedULL))); }

Scalar random_scalar(const Field& field, Rng& rng, long bound) {
    switch (field->kind()) {
        case FieldContext::Kind::prime:
            return Scalar::from_int(field, static_cast<long long>(rng.below(field->modulus())));
        case FieldContext::Kind::rationals: {
            const auto span = static_cast<std::uint64_t>(2 * bound + 1);
            return Scalar::from_int(field, static_cast<long long>(rng.below(span)) - bound);
        }
        case FieldContext::Kind::function:
            return Scalar::embed(field, random_scalar(field->base(), rng, bound));
    }
    throw Error(ErrorCode::internal, "unreachable field kind");
}

Scalar random_nonzero_scalar(const Field& field, Rng& rng, long bound) {
    for (;;) {
        Scalar s = random_scalar(field, rng, bound);
        if (!s.is_zero()) return s;
    }
}

}  // namespace polarcover
