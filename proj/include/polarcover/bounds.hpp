#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "polarcover/poly.hpp"
#include "polarcover/projective.hpp"
#include "polarcover/rng.hpp"

namespace polarcover {

/// Multidegree d_1 <= ... <= d_m of a complete intersection.
class MultiDegree {
  public:
    explicit MultiDegree(std::vector<unsigned> degrees);
    static MultiDegree single(unsigned d) { return MultiDegree({d}); }
    /// (1, 2, ..., n)
    static MultiDegree staircase(unsigned n);

    const std::vector<unsigned>& degrees() const noexcept { return degrees_; }
    std::size_t size() const noexcept { return degrees_.size(); }
    /// (1, ..., 1, 2) with at least one 1: the case without a linear-space criterion.
    bool is_excluded() const;
    std::string to_string() const;

  private:
    std::vector<unsigned> degrees_;
};

mpz_class binomial(unsigned long n, unsigned long k);

/// (r - q)(q + 1) >= sum_j C(d_j + q, q). Requires 0 < q < r.
bool predonzan_ok(const mpz_class& r, unsigned long q, const MultiDegree& dbar);
/// Least r > q with predonzan_ok(r, q, dbar).
mpz_class min_r_linear(unsigned long q, const MultiDegree& dbar);

struct BoundsLedger {
    unsigned long r = 0;
    unsigned long q = 0;
    unsigned d = 0;
    MultiDegree dbar{{1}};
    std::vector<mpz_class> n_j;  ///< C(r + d_j, d_j) - 1
    std::vector<mpz_class> m_j;  ///< C(d_j + r, r) - C(d_j + q, q) - 1
    mpz_class incidence_dim;
    mpz_class fano_dim;    ///< (q + 1)(r - q) - sum_j C(d_j + q, q)
    std::optional<mpz_class> fano_dim_b;  ///< (q + 1)(r - q) - C(q + 2d, 2d); needs d > 0
    bool excluded = false;
    bool predonzan_ok = false;
    bool trdeg_identity_ok = false;
};

BoundsLedger ledger(unsigned long r, unsigned long q, unsigned d, const MultiDegree& dbar);

/// Integer that may only be known as a lower bound, or not at all.
struct BoundedInt {
    enum class Kind { exact, lower_bound, unknown };
    Kind kind = Kind::unknown;
    mpz_class value;

    static BoundedInt exact(mpz_class v) { return {Kind::exact, std::move(v)}; }
    static BoundedInt at_least(mpz_class v) { return {Kind::lower_bound, std::move(v)}; }
    static BoundedInt unknown() { return {}; }
    bool is_exact() const noexcept { return kind == Kind::exact; }
    /// "25", ">=27" or "unknown".
    std::string to_string() const;
};

struct ConstantsLedger {
    unsigned d = 0;
    unsigned n = 0;  ///< 2d - 2
    BoundedInt q_dbar;
    BoundedInt rho_dprime;  ///< q(dbar) + 1
    BoundedInt rho1;        ///< c*(2d, rho'')
    BoundedInt c_dbar;
    BoundedInt rho;  ///< max(c(dbar), rho1) + 1
};

/// Only q(3) = 25 is built in; for d > 3 q(dbar) is an external input or the
/// lower bound 25 + 2(d - 3). Throws Error(precondition) for d < 3.
ConstantsLedger constants(unsigned d, const std::optional<mpz_class>& c_external,
                          const std::optional<mpz_class>& q_external);

/// All exponent vectors of total degree `degree` in `nvars` variables, grlex descending.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned degree);

/// C(r + d, d) - C(q + d, d): monomials of degree d with positive Y-degree.
mpz_class fiber_coefficient_count(unsigned long r, unsigned long q, unsigned d);

enum class GenerationMode { seeded_random, transcendental };

/// Forms of degrees dbar vanishing on L0 = {Y_{q+1} = ... = Y_r = 0}, with every
/// admissible coefficient independent: uniform random from the field of L0, or
/// fresh symbols of a new function field over it (named b<j>_<k>).
/// L0 must already be the coordinate subspace; `rng` is required in random mode.
std::vector<Poly> gen_fiber_generic(const Subspace& l0, const MultiDegree& dbar, GenerationMode mode,
                                    Rng* rng = nullptr);

/// True iff every monomial has positive degree in the variables after index q,
/// i.e. the hypersurface contains {Y_{q+1} = ... = Y_r = 0}.
bool contains_coordinate_plane(const Poly& g, std::size_t q);

}  // namespace polarcover
