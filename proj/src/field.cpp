#include "polarcover/field.hpp"

#include <gmp.h>

#include <sstream>
#include <utility>

#include "polarcover/errors.hpp"
#include "polarcover/poly.hpp"
#include "polarcover/poly_text.hpp"

namespace polarcover {

struct RationalFunctionData {
    Poly num;
    Poly den;
};

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::usage: return "usage";
        case ErrorCode::parse: return "parse";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::degree: return "degree";
        case ErrorCode::invalid_subspace: return "invalid_subspace";
        case ErrorCode::singular_transform: return "singular_transform";
        case ErrorCode::degenerate_line: return "degenerate_line";
        case ErrorCode::degenerate_geometry: return "degenerate_geometry";
        case ErrorCode::identically_zero: return "identically_zero";
        case ErrorCode::exclusion: return "exclusion";
        case ErrorCode::sampling_failure: return "sampling_failure";
        case ErrorCode::resample: return "resample";
        case ErrorCode::config: return "config";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1U) result = mul_mod(result, a, p);
        a = mul_mod(a, a, p);
        e >>= 1U;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw Error(ErrorCode::usage, "division by zero in F_" + std::to_string(p));
    // extended Euclid on signed 128-bit to stay exact for 62-bit moduli
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a;
    while (new_r != 0) {
        __int128 quotient = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - quotient * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - quotient * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

// ---------------------------------------------------------------- FieldContext

Field FieldContext::rationals() {
    static const Field q = [] {
        auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
        ctx->kind_ = Kind::rationals;
        return Field(ctx);
    }();
    return q;
}

Field FieldContext::prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0 || p >= (std::uint64_t{1} << 62U) || !is_prime_u64(p))
        throw Error(ErrorCode::usage, "prime field modulus must be an odd prime below 2^62, got " + std::to_string(p));
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->kind_ = Kind::prime;
    ctx->modulus_ = p;
    return ctx;
}

Field FieldContext::function_field(Field base, std::vector<std::string> symbols) {
    if (!base || base->is_function())
        throw Error(ErrorCode::usage, "function field base must be the rationals or a prime field");
    if (symbols.empty()) throw Error(ErrorCode::usage, "function field needs at least one symbol");
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->kind_ = Kind::function;
    ctx->base_ = std::move(base);
    ctx->symbols_ = Frame::make(std::move(symbols));  // uniqueness checked by Frame
    return ctx;
}

std::size_t FieldContext::symbol_count() const { return symbols_ ? symbols_->size() : 0; }

std::string FieldContext::describe() const {
    switch (kind_) {
        case Kind::rationals: return "Q";
        case Kind::prime: return "F_" + std::to_string(modulus_);
        case Kind::function: {
            std::ostringstream os;
            os << base_->describe() << "(" << symbol_count() << " symbols)";
            return os.str();
        }
    }
    return "?";
}

bool same_field(const Field& a, const Field& b) {
    if (a == b) return true;
    if (!a || !b || a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case FieldContext::Kind::rationals: return true;
        case FieldContext::Kind::prime: return a->modulus() == b->modulus();
        case FieldContext::Kind::function:
            return same_field(a->base(), b->base()) && same_frame(a->symbols(), b->symbols());
    }
    return false;
}

// ---------------------------------------------------------------- Scalar

namespace {

std::shared_ptr<const RationalFunctionData> make_fraction(const Field& f, Poly num, Poly den) {
    if (den.is_zero()) throw Error(ErrorCode::usage, "zero denominator in function field element");
    num.clear_homogeneous();
    den.clear_homogeneous();
    const Field& base = f->base();
    const FramePtr& syms = f->symbols();
    if (num.is_zero()) {
        return std::make_shared<const RationalFunctionData>(
            RationalFunctionData{Poly(base, syms), Poly::constant(base, syms, Scalar::from_int(base, 1))});
    }
    if (!den.is_constant()) {
        try {
            num = num.divide_exact(den);
            den = Poly::constant(base, syms, Scalar::from_int(base, 1));
        } catch (const Error&) {
        }
    }
    if (!den.is_constant() && !num.is_constant()) {
        try {
            Poly q = den.divide_exact(num);
            num = Poly::constant(base, syms, Scalar::from_int(base, 1));
            den = std::move(q);
        } catch (const Error&) {
        }
    }
    Scalar lc = den.leading_coefficient();
    if (!lc.is_one()) {
        Scalar inv = lc.inverse();
        num = num * inv;
        den = den * inv;
    }
    return std::make_shared<const RationalFunctionData>(RationalFunctionData{std::move(num), std::move(den)});
}

}  // namespace

Scalar::Scalar(Field field) : field_(std::move(field)) {
    if (!field_) throw Error(ErrorCode::usage, "scalar without field");
    switch (field_->kind()) {
        case FieldContext::Kind::prime: value_ = std::uint64_t{0}; break;
        case FieldContext::Kind::rationals: value_ = mpq_class(0); break;
        case FieldContext::Kind::function:
            value_ = make_fraction(field_, Poly(field_->base(), field_->symbols()),
                                   Poly::constant(field_->base(), field_->symbols(),
                                                  Scalar::from_int(field_->base(), 1)));
            break;
    }
}

Scalar Scalar::from_int(Field field, long long value) {
    if (field->is_prime()) {
        const std::uint64_t p = field->modulus();
        const std::uint64_t mag = value < 0 ? 0ULL - static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
        const std::uint64_t r = mag % p;
        return Scalar(std::move(field), Value(value < 0 && r != 0 ? p - r : r));
    }
    if (field->is_rationals()) return Scalar(std::move(field), Value(mpq_class(static_cast<long>(value))));
    return from_mpz(std::move(field), mpz_class(std::to_string(value)));
}

Scalar Scalar::from_mpz(Field field, const mpz_class& value) { return from_mpq(std::move(field), mpq_class(value)); }

Scalar Scalar::from_mpq(Field field, const mpq_class& value) {
    switch (field->kind()) {
        case FieldContext::Kind::rationals: {
            mpq_class q(value);
            q.canonicalize();
            return Scalar(std::move(field), Value(std::move(q)));
        }
        case FieldContext::Kind::prime: {
            const std::uint64_t p = field->modulus();
            mpz_class pz(std::to_string(p));
            mpz_class num = value.get_num() % pz;
            if (num < 0) num += pz;
            mpz_class den = value.get_den() % pz;
            if (den == 0) throw Error(ErrorCode::usage, "denominator divisible by field characteristic");
            std::uint64_t n = std::stoull(num.get_str());
            std::uint64_t d = std::stoull(den.get_str());
            return Scalar(std::move(field), Value(mul_mod(n, inv_mod(d, p), p)));
        }
        case FieldContext::Kind::function: {
            Scalar b = from_mpq(field->base(), value);
            return embed(std::move(field), b);
        }
    }
    throw Error(ErrorCode::internal, "unreachable field kind");
}

Scalar Scalar::symbol(Field field, std::size_t index) {
    if (!field->is_function()) throw Error(ErrorCode::usage, "symbols exist only in function fields");
    if (index >= field->symbol_count()) throw Error(ErrorCode::usage, "symbol index out of range");
    Poly num = Poly::variable(field->base(), field->symbols(), index);
    Poly den = Poly::constant(field->base(), field->symbols(), from_int(field->base(), 1));
    return fraction(std::move(field), num, den);
}

Scalar Scalar::fraction(Field field, const Poly& num, const Poly& den) {
    if (!field->is_function()) throw Error(ErrorCode::usage, "fraction() needs a function field");
    if (!same_field(num.field(), field->base()) || !same_field(den.field(), field->base()) ||
        !same_frame(num.frame(), field->symbols()) || !same_frame(den.frame(), field->symbols()))
        throw Error(ErrorCode::usage, "fraction parts must live over the base field in the symbol frame");
    auto data = make_fraction(field, num, den);
    return Scalar(std::move(field), Value(std::move(data)));
}

Scalar Scalar::embed(Field field, const Scalar& base_value) {
    if (!field->is_function() || !same_field(field->base(), base_value.field()))
        throw Error(ErrorCode::usage, "embed() needs a function field over the value's field");
    Poly num = Poly::constant(field->base(), field->symbols(), base_value);
    Poly den = Poly::constant(field->base(), field->symbols(), from_int(field->base(), 1));
    return fraction(std::move(field), num, den);
}

void Scalar::check_same(const Scalar& rhs) const {
    if (!same_field(field_, rhs.field_))
        throw Error(ErrorCode::usage,
                    "field mismatch: " + field_->describe() + " vs " + rhs.field_->describe());
}

const RationalFunctionData& Scalar::fn() const { return *std::get<std::shared_ptr<const RationalFunctionData>>(value_); }

bool Scalar::is_zero() const {
    switch (field_->kind()) {
        case FieldContext::Kind::prime: return std::get<std::uint64_t>(value_) == 0;
        case FieldContext::Kind::rationals: return sgn(std::get<mpq_class>(value_)) == 0;
        case FieldContext::Kind::function: return fn().num.is_zero();
    }
    return false;
}

bool Scalar::is_one() const {
    switch (field_->kind()) {
        case FieldContext::Kind::prime: return std::get<std::uint64_t>(value_) == 1;
        case FieldContext::Kind::rationals: return std::get<mpq_class>(value_) == 1;
        case FieldContext::Kind::function: {
            const auto& f = fn();
            return f.num.is_constant() && f.den.is_constant() && f.num == f.den;
        }
    }
    return false;
}

Scalar Scalar::operator-() const {
    switch (field_->kind()) {
        case FieldContext::Kind::prime: {
            std::uint64_t v = std::get<std::uint64_t>(value_);
            return Scalar(field_, Value(v == 0 ? 0 : field_->modulus() - v));
        }
        case FieldContext::Kind::rationals: return Scalar(field_, Value(mpq_class(-std::get<mpq_class>(value_))));
        case FieldContext::Kind::function: {
            const auto& f = fn();
            return Scalar(field_, Value(std::make_shared<const RationalFunctionData>(RationalFunctionData{-f.num, f.den})));
        }
    }
    throw Error(ErrorCode::internal, "unreachable field kind");
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    check_same(rhs);
    switch (field_->kind()) {
        case FieldContext::Kind::prime: {
            const std::uint64_t p = field_->modulus();
            std::uint64_t s = std::get<std::uint64_t>(value_) + std::get<std::uint64_t>(rhs.value_);
            if (s >= p) s -= p;
            value_ = s;
            break;
        }
        case FieldContext::Kind::rationals: std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_); break;
        case FieldContext::Kind::function: {
            const auto& a = fn();
            const auto& b = rhs.fn();
            if (a.den == b.den)
                value_ = make_fraction(field_, a.num + b.num, a.den);
            else
                value_ = make_fraction(field_, a.num * b.den + b.num * a.den, a.den * b.den);
            break;
        }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    check_same(rhs);
    switch (field_->kind()) {
        case FieldContext::Kind::prime:
            value_ = mul_mod(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(rhs.value_), field_->modulus());
            break;
        case FieldContext::Kind::rationals: std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_); break;
        case FieldContext::Kind::function: {
            const auto& a = fn();
            const auto& b = rhs.fn();
            if (b.den.is_constant() && a.den.is_constant())
                value_ = make_fraction(field_, a.num * b.num, a.den);
            else
                value_ = make_fraction(field_, a.num * b.num, a.den * b.den);
            break;
        }
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::usage, "division by zero");
    switch (field_->kind()) {
        case FieldContext::Kind::prime:
            return Scalar(field_, Value(inv_mod(std::get<std::uint64_t>(value_), field_->modulus())));
        case FieldContext::Kind::rationals: return Scalar(field_, Value(mpq_class(1 / std::get<mpq_class>(value_))));
        case FieldContext::Kind::function: {
            const auto& f = fn();
            return Scalar(field_, Value(make_fraction(field_, f.den, f.num)));
        }
    }
    throw Error(ErrorCode::internal, "unreachable field kind");
}

Scalar Scalar::pow(unsigned long e) const {
    Scalar result = from_int(field_, 1);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e > 0) base *= base;
    }
    return result;
}

bool Scalar::operator==(const Scalar& rhs) const {
    if (!same_field(field_, rhs.field_)) return false;
    switch (field_->kind()) {
        case FieldContext::Kind::prime: return std::get<std::uint64_t>(value_) == std::get<std::uint64_t>(rhs.value_);
        case FieldContext::Kind::rationals: return std::get<mpq_class>(value_) == std::get<mpq_class>(rhs.value_);
        case FieldContext::Kind::function: {
            const auto& a = fn();
            const auto& b = rhs.fn();
            if (a.den == b.den) return a.num == b.num;
            return a.num * b.den == b.num * a.den;
        }
    }
    return false;
}

const mpq_class& Scalar::rational() const {
    if (!field_->is_rationals()) throw Error(ErrorCode::usage, "not a rational scalar");
    return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::residue() const {
    if (!field_->is_prime()) throw Error(ErrorCode::usage, "not a prime-field scalar");
    return std::get<std::uint64_t>(value_);
}

Poly Scalar::numerator() const {
    if (!field_->is_function()) throw Error(ErrorCode::usage, "numerator() needs a function-field scalar");
    return fn().num;
}

Poly Scalar::denominator() const {
    if (!field_->is_function()) throw Error(ErrorCode::usage, "denominator() needs a function-field scalar");
    return fn().den;
}

bool Scalar::is_negative() const { return field_->is_rationals() && sgn(std::get<mpq_class>(value_)) < 0; }

std::string Scalar::to_string() const {
    switch (field_->kind()) {
        case FieldContext::Kind::prime: return std::to_string(std::get<std::uint64_t>(value_));
        case FieldContext::Kind::rationals: return std::get<mpq_class>(value_).get_str();
        case FieldContext::Kind::function: {
            const auto& f = fn();
            std::string s = "(" + to_text(f.num) + ")";
            if (!f.den.is_constant() || !f.den.constant_term().is_one()) s += "/(" + to_text(f.den) + ")";
            return s;
        }
    }
    return "?";
}

}  // namespace polarcover
