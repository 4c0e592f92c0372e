#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace polarcover {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;
class FieldContext;
using Field = std::shared_ptr<const FieldContext>;
class Poly;
struct RationalFunctionData;

/// Coefficient field of a session: the rationals, a prime field F_p, or a
/// rational function field over one of those in named transcendental symbols.
class FieldContext {
  public:
    enum class Kind { rationals, prime, function };

    static Field rationals();
    /// Throws unless p is an odd prime below 2^62.
    static Field prime(std::uint64_t p);
    /// Symbols must be unique identifiers; the base must not itself be a function field.
    static Field function_field(Field base, std::vector<std::string> symbols);

    Kind kind() const noexcept { return kind_; }
    bool is_prime() const noexcept { return kind_ == Kind::prime; }
    bool is_rationals() const noexcept { return kind_ == Kind::rationals; }
    bool is_function() const noexcept { return kind_ == Kind::function; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const Field& base() const noexcept { return base_; }
    const FramePtr& symbols() const noexcept { return symbols_; }
    std::size_t symbol_count() const;
    std::string describe() const;

  private:
    FieldContext() = default;

    Kind kind_ = Kind::rationals;
    std::uint64_t modulus_ = 0;
    Field base_;
    FramePtr symbols_;
};

bool same_field(const Field& a, const Field& b);
bool is_prime_u64(std::uint64_t n);

/// Element of a FieldContext, always in canonical form: reduced fraction with
/// positive denominator, residue in [0, p), or num/den with monic denominator.
class Scalar {
  public:
    explicit Scalar(Field field);

    static Scalar from_int(Field field, long long value);
    static Scalar from_mpz(Field field, const mpz_class& value);
    static Scalar from_mpq(Field field, const mpq_class& value);
    static Scalar symbol(Field field, std::size_t index);
    /// num/den over the base field in the symbol frame of `field`.
    static Scalar fraction(Field field, const Poly& num, const Poly& den);
    /// Lifts an element of field->base() into the function field.
    static Scalar embed(Field field, const Scalar& base_value);

    const Field& field() const noexcept { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);
    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    Scalar inverse() const;
    Scalar pow(unsigned long e) const;

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    const mpq_class& rational() const;
    std::uint64_t residue() const;
    Poly numerator() const;
    Poly denominator() const;

    /// True for a rational with negative value; printing hoists that sign.
    bool is_negative() const;
    /// Decimal "a" / "a/b" for rationals and residues, "(num)" or "(num)/(den)" otherwise.
    std::string to_string() const;

  private:
    using Value = std::variant<std::uint64_t, mpq_class, std::shared_ptr<const RationalFunctionData>>;
    Scalar(Field field, Value value) : field_(std::move(field)), value_(std::move(value)) {}
    void check_same(const Scalar& rhs) const;
    const RationalFunctionData& fn() const;

    Field field_;
    Value value_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

}  // namespace polarcover
