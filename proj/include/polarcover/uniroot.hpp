#pragma once

#include <vector>

#include "polarcover/poly.hpp"

namespace polarcover {

struct RootMultiplicity {
    Scalar root;
    unsigned multiplicity;
};

/// Order/residual split of a univariate polynomial plus its roots in the base field.
struct UniRootData {
    Poly poly;
    unsigned order_at_zero = 0;
    Poly residual;  ///< poly / t^order_at_zero, nonzero constant term
    std::vector<RootMultiplicity> roots;
    /// False over function fields, where only the order/residual split is computed.
    bool roots_searched = false;
};

/// Throws Error(identically_zero) on the zero polynomial. Roots over F_p come
/// from gcd with x^p - x followed by equal-degree splitting; over Q only
/// rational roots are reported (rational root test).
UniRootData uni_root_data(const Poly& a);

/// Distinct roots in F_p of a dense polynomial (coefficients low to high), ascending.
std::vector<std::uint64_t> roots_mod_p(std::vector<std::uint64_t> f, std::uint64_t p);

}  // namespace polarcover
