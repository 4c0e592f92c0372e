#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polarcover/poly.hpp"
#include "polarcover/projective.hpp"
#include "polarcover/rng.hpp"
#include "polarcover/uniroot.hpp"

namespace polarcover {

/// j-th polar of G at eta: (sum_i x_i d/dX_i)^j G evaluated at X = eta, a
/// degree-j form in the running point x (same frame as G). No 1/j! factor.
/// Throws Error(degree) unless 1 <= j <= deg G, Error(precondition) if G is
/// not homogeneous.
Poly polar(const Poly& g, std::span<const Scalar> eta, unsigned j);
Poly polar(const Poly& g, const ProjPoint& eta, unsigned j);

/// (sum_i x_i d/dX_i)^j G as a polynomial in X, for a fixed direction x.
Poly directional_power(const Poly& g, std::span<const Scalar> x, unsigned j);

struct PolarSystem {
    ProjPoint base_point;
    std::vector<Poly> polars;  ///< polars[j - 1] has degree j, j = 1 .. 2d-2
    Poly source;

    unsigned half_degree() const { return static_cast<unsigned>(source.total_degree()) / 2; }
    bool contains(std::span<const Scalar> x) const;
};

/// Polars 1 .. 2d-2 of an even-degree form at a point of its zero set.
PolarSystem f_eta(const Poly& b, const ProjPoint& eta);

/// Decomposition G^T = sum_s Z0^(2d-s) Phi_s after the shift
/// Z~i = Zi - eta_i Z0 (1 <= i <= 2d-2) that moves eta to (1, 0, ..., 0).
struct PhiDecomposition {
    Transform transform;
    Poly transformed;          ///< G^T
    std::vector<Poly> phis;    ///< phis[s - 1] = Phi_s, s = 1 .. 2d
    std::size_t q = 0;
    unsigned d = 0;
    bool residual_ok = false;  ///< no Z0^(2d) term and the sum reconstructs G^T
    bool pure_tilde_free = false;  ///< Phi_1 .. Phi_{2d-2} avoid monomials in Z~ alone

    const Poly& phi(unsigned s) const { return phis.at(s - 1); }
    /// x0 = 0 and Phi_1 .. Phi_{2d-2} vanish at x.
    bool in_f_star(std::span<const Scalar> x) const;
};

/// Needs the adapted frame, 2d - 2 <= q < r, eta in M0 = <e_0 .. e_{2d-2}> with
/// eta_0 = 1, and B containing L0 = {Y = 0}; otherwise Error(precondition).
PhiDecomposition phi_decomposition(const Poly& b, const ProjPoint& eta, std::size_t q);

struct ContactFlags {
    bool line_in_B = false;
    bool xi_on_B = false;
    bool beta_equals_eta = false;

    bool any() const noexcept { return line_in_B || xi_on_B || beta_equals_eta; }
    /// Name of the first raised flag, empty if none.
    std::string name() const;
};

struct ContactReport {
    ProjPoint eta;
    ProjPoint xi;
    Poly restriction;                   ///< G(eta + t xi)
    std::optional<UniRootData> restricted;  ///< absent when the restriction is zero
    int contact_order = -1;
    std::optional<Scalar> a;            ///< coefficient of t^(2d-1)
    std::optional<Scalar> b;            ///< coefficient of t^(2d) = G(xi)
    std::optional<Scalar> t_beta;
    std::optional<ProjPoint> beta;
    ContactFlags flags;
    unsigned d = 0;
};

/// Residual intersection of the line <eta, xi> with B. Degenerate situations
/// are reported through flags; eta off B or xi off the polars is a
/// precondition error, eta == xi a degenerate_line error.
ContactReport contact_analysis(const Poly& b, const ProjPoint& eta, const ProjPoint& xi);

struct SearchStats {
    unsigned trials = 0;
    unsigned phi1_degenerate = 0;
    unsigned phi2_inconsistent = 0;
    unsigned no_root = 0;
    unsigned rejected = 0;  ///< candidate failed the final check (on L0*, on B, ...)
    std::string to_string() const;
};

/// Random point of F*_eta over F_p: Y solves the linear Phi_1, one Z~ solves
/// the then affine Phi_2, 2d-4 held-back Z~ solve Phi_3 .. Phi_{2d-2} by
/// resultant elimination and the rest are random. The returned point has
/// x0 = 0, lies off L0* and off B. Throws Error(sampling_failure) after
/// max_trials unsuccessful trials.
ProjPoint find_point_f_eta_star(const PhiDecomposition& phis, Rng& rng, unsigned max_trials,
                                SearchStats* stats = nullptr);

/// Resultant of f and g with respect to variable `var`, by fraction-free
/// elimination of the Sylvester matrix.
Poly resultant(const Poly& f, const Poly& g, std::size_t var);

}  // namespace polarcover
