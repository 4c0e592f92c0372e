#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polarcover/matrix.hpp"
#include "polarcover/polar.hpp"

namespace polarcover {

/// w^2 = G(X), the double cover of P^r branched along G = 0.
struct DoubleCover {
    Poly branch;

    explicit DoubleCover(Poly g);
    std::size_t r() const { return branch.nvars() - 1; }
    unsigned half_degree() const { return static_cast<unsigned>(branch.total_degree()) / 2; }
    /// G(x / x_chart); throws Error(degenerate_geometry) when x_chart = 0.
    Scalar chart_value(const ProjPoint& x, std::size_t chart) const;
};

struct CoverPoint {
    ProjPoint base;
    Scalar w;
    std::size_t chart = 0;
};

bool on_cover(const DoubleCover& cover, const CoverPoint& pt);

/// num/den in the single variable tau.
struct RationalFunction {
    Poly num;
    Poly den;

    /// Throws Error(degenerate_geometry) at a pole.
    Scalar operator()(const Scalar& tau) const;
};

const FramePtr& tau_frame();

/// t(tau) = c t_beta / (c - tau^2), w(tau) = tau t(tau)^d on the chart of eta:
/// the curve w^2 = c t^(2d-1) (t - t_beta) over the line eta + t xi.
struct CurveParam {
    ProjPoint eta;
    ProjPoint xi;
    RationalFunction t_of_tau;
    RationalFunction w_of_tau;
    Scalar c;
    Scalar t_beta;
    unsigned d = 0;
    std::size_t chart = 0;
    bool identity_ok = false;  ///< w^2 - G(eta + t xi) vanishes identically

    /// Cover point over eta + t(tau) xi, in the chart of eta.
    CoverPoint at(const Scalar& tau) const;
};

/// Needs an unflagged report; throws Error(degenerate_geometry) naming the flag.
CurveParam parametrize_curve(const DoubleCover& cover, const ContactReport& report);

/// (2d - 2) + (r - 2d + 1) + 1 = r.
std::size_t omega_parameter_count(std::size_t r, unsigned d);

/// eta = (1, eta_1, ..., eta_{2d-2}, 0, ..., 0); the cover point at tau on the
/// curve over the line <eta, xi>.
CoverPoint omega_map(const Poly& b, std::span<const Scalar> eta_params, const ProjPoint& xi, const Scalar& tau);

enum class RankTarget { beta, alpha, omega };
std::string to_string(RankTarget t);

struct RankCert {
    RankTarget which = RankTarget::beta;
    std::vector<std::string> eta;
    std::vector<std::string> xi;
    std::string tau;
    std::uint64_t p = 0;
    Matrix jacobian{FieldContext::rationals(), 0, 0};  ///< target differential on the tangent space of S
    std::size_t constraint_rank = 0;
    std::size_t tangent_dim = 0;
    std::size_t rank = 0;
    std::size_t rank_alt = 0;  ///< second elimination order
    std::size_t expected = 0;
    bool pass = false;
    mpz_class sz_degree;  ///< degree bound on the certifying minor
    std::string label = "probabilistic";

    /// sz_degree / p as a decimal string.
    std::string failure_bound() const;
};

/// Differential of the chosen target on the tangent space of
/// S = {(eta, xi) : eta in M0, xi in H0, Delta^s_eta(B)(xi) = 0, s <= 2d-2}
/// at a point over F_p, by first-order jets. Expected ranks: beta r-1,
/// alpha r, omega r. Throws Error(resample) at a degenerate sample.
RankCert rank_certificate(const Poly& b, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau,
                          RankTarget which);
/// All three targets from one jet evaluation.
std::vector<RankCert> rank_certificates(const Poly& b, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau);

struct FiberCondition {
    unsigned j = 0;  ///< polar order
    Poly condition{FieldContext::rationals(), Frame::make({})};  ///< Delta^j_eta(B*)(beta*) restricted to M0, in the eta frame
    std::size_t coordinate = 0;
    unsigned exponent = 0;
    bool pure_power = false;
};

struct WitnessReport {
    unsigned d = 0;
    std::size_t r = 0;
    std::size_t q = 0;
    Poly bstar;
    ProjPoint eta_star;
    ProjPoint beta_star;
    std::vector<FiberCondition> fiber_system;
    bool triangular = false;
    bool unique = false;
    std::size_t solution_index = 0;  ///< eta* = e_{solution_index}, zero-based
    mpz_class multiplicity;
    mpz_class expected_multiplicity;  ///< (2d - 1)!
    bool eta_on_bstar = false;
    bool beta_on_bstar = false;
    bool beta_on_polars = false;
    std::string indexing_note;

    bool pass() const;
};

/// B* = Z_{2d-3}^{2d-1} Y_r + sum_{k=2}^{2d-2} Z_{k-2}^k Y_r^{2d-k} over Q in the
/// frame adapted to q = 2d - 2, r = 2d; beta* = e_r. Throws Error(precondition)
/// for d < 2.
WitnessReport specialization_witness(unsigned d);

}  // namespace polarcover
