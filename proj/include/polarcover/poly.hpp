#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polarcover/field.hpp"

namespace polarcover {

/// Ordered list of variable names; polynomials only combine over equal frames.
class Frame {
  public:
    explicit Frame(std::vector<std::string> names);

    static FramePtr make(std::vector<std::string> names);
    /// prefix+first, prefix+(first+1), ...
    static FramePtr indexed(std::string_view prefix, std::size_t count, std::size_t first = 0);
    /// Z0..Zq, Y{q+1}..Yr: the frame adapted to a q-plane in P^r.
    static FramePtr adapted(std::size_t q, std::size_t r);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> find(std::string_view name) const;

    bool operator==(const Frame& rhs) const { return names_ == rhs.names_; }

  private:
    std::vector<std::string> names_;
};

bool same_frame(const FramePtr& a, const FramePtr& b);

using Exponent = std::vector<std::uint32_t>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order, largest first.
struct GrlexDescending {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial with canonical grlex term storage.
///
/// The homogeneity flag is bookkeeping: when set to n every stored exponent
/// sums to n. Arithmetic propagates it (products add degrees, sums keep it
/// only when both operands carry the same degree).
class Poly {
  public:
    using TermMap = std::map<Exponent, Scalar, GrlexDescending>;

    Poly(Field field, FramePtr frame);

    static Poly constant(Field field, FramePtr frame, const Scalar& c);
    static Poly variable(Field field, FramePtr frame, std::size_t index);
    static Poly monomial(Field field, FramePtr frame, Exponent e, const Scalar& c);

    const Field& field() const noexcept { return field_; }
    const FramePtr& frame() const noexcept { return frame_; }
    std::size_t nvars() const;
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;

    /// -1 for the zero polynomial.
    int total_degree() const;
    unsigned degree_in(std::size_t var) const;
    /// Lowest exponent of `var` over all terms (0 for the zero polynomial).
    unsigned order_in(std::size_t var) const;

    std::optional<unsigned> homogeneous_flag() const noexcept { return hdeg_; }
    bool is_homogeneous() const;
    /// Verifies homogeneity of the given degree (or the current total degree) and sets the flag.
    Poly& mark_homogeneous(std::optional<unsigned> degree = std::nullopt);
    Poly& clear_homogeneous() noexcept {
        hdeg_.reset();
        return *this;
    }

    Scalar coefficient(const Exponent& e) const;
    Scalar constant_term() const;
    Scalar leading_coefficient() const;
    const Exponent& leading_exponent() const;

    /// Accumulates c·x^e; clears the homogeneity flag if the degree disagrees.
    void add_term(const Exponent& e, const Scalar& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    friend Poly operator*(const Poly& lhs, const Scalar& rhs);
    friend Poly operator*(const Scalar& lhs, const Poly& rhs) { return rhs * lhs; }

    /// Exact equality of term maps (flags are not compared).
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly pow(unsigned e) const;
    Poly derivative(std::size_t var) const;
    Scalar evaluate(std::span<const Scalar> point) const;
    /// Replaces variable i by images[i]; all images share one field and frame.
    Poly substitute(std::span<const Poly> images) const;
    /// Coefficient of var^power, as a polynomial in the same frame with var's exponent zero.
    Poly coefficient_of(std::size_t var, unsigned power) const;
    /// Exact quotient; throws unless rhs divides *this.
    Poly divide_exact(const Poly& rhs) const;
    /// Same terms in another frame of equal size (names only change).
    Poly reframed(FramePtr frame) const;

  private:
    void check_compatible(const Poly& rhs) const;

    Field field_;
    FramePtr frame_;
    TermMap terms_;
    std::optional<unsigned> hdeg_;
};

/// Univariate helpers over a single-variable frame.
Poly univariate(Field field, FramePtr frame, std::span<const Scalar> coeffs);
std::vector<Scalar> dense_coefficients(const Poly& p);

}  // namespace polarcover
