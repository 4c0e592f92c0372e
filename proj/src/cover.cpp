#include "polarcover/cover.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "polarcover/errors.hpp"

namespace polarcover {

DoubleCover::DoubleCover(Poly g) : branch(std::move(g)) {
    if (branch.is_zero() || !branch.is_homogeneous() || branch.total_degree() % 2 != 0 || branch.total_degree() < 2)
        throw Error(ErrorCode::precondition, "branch locus must be a nonzero form of even degree");
}

Scalar DoubleCover::chart_value(const ProjPoint& x, std::size_t chart) const {
    if (x.size() != branch.nvars()) throw Error(ErrorCode::usage, "point does not match the frame");
    if (chart >= x.size()) throw Error(ErrorCode::usage, "chart index out of range");
    if (x[chart].is_zero())
        throw Error(ErrorCode::degenerate_geometry, "chart coordinate " + std::to_string(chart) + " vanishes");
    const Scalar inv = x[chart].inverse();
    std::vector<Scalar> affine;
    for (const auto& c : x.coords()) affine.push_back(c * inv);
    return branch.evaluate(affine);
}

bool on_cover(const DoubleCover& cover, const CoverPoint& pt) {
    return pt.w * pt.w == cover.chart_value(pt.base, pt.chart);
}

const FramePtr& tau_frame() {
    static const FramePtr frame = Frame::make({"tau"});
    return frame;
}

Scalar RationalFunction::operator()(const Scalar& tau) const {
    const Scalar at[1] = {tau};
    const Scalar den_value = den.evaluate(at);
    if (den_value.is_zero()) throw Error(ErrorCode::degenerate_geometry, "parameter value is a pole");
    return num.evaluate(at) / den_value;
}

CoverPoint CurveParam::at(const Scalar& tau) const {
    const Scalar t = t_of_tau(tau);
    const Scalar w = w_of_tau(tau);
    std::vector<Scalar> x;
    for (std::size_t i = 0; i < eta.size(); ++i) x.push_back(eta[i] + t * xi[i]);
    const Scalar xc = x.at(chart);
    if (xc.is_zero()) throw Error(ErrorCode::degenerate_geometry, "curve point leaves the chart of eta");
    // the chart value of G scales by xc^(-2d), so w scales by xc^(-d)
    return CoverPoint{ProjPoint(std::move(x)), w / xc.pow(d), chart};
}

CurveParam parametrize_curve(const DoubleCover& cover, const ContactReport& report) {
    if (report.flags.any())
        throw Error(ErrorCode::degenerate_geometry, "contact report is flagged: " + report.flags.name());
    if (!report.t_beta || !report.b || report.t_beta->is_zero() || report.b->is_zero())
        throw Error(ErrorCode::degenerate_geometry, "contact report lacks a residual point");
    const Poly& g = cover.branch;
    const Field& f = g.field();
    const FramePtr& fr = tau_frame();
    const unsigned d = report.d;
    const Scalar c = *report.b;
    const Scalar tb = *report.t_beta;

    const Poly tau = Poly::variable(f, fr, 0);
    const Poly n = Poly::constant(f, fr, c * tb);
    const Poly den = Poly::constant(f, fr, c) - tau * tau;

    CurveParam out{report.eta, report.xi, {n, den}, {tau * n.pow(d), den.pow(d)}, c, tb, d, report.eta.pivot(), false};

    // w^2 = c t^(2d-1) (t - t_beta) with everything multiplied by den^(2d)
    const Poly lhs = tau * tau * n.pow(2 * d);
    const Poly rhs = Poly::constant(f, fr, c) * n.pow(2 * d - 1) * (n - Poly::constant(f, fr, tb) * den);
    std::vector<Poly> images;
    for (std::size_t i = 0; i < g.nvars(); ++i)
        images.push_back(den * report.eta[i] + n * report.xi[i]);
    const Poly g_on_curve = g.substitute(images);
    out.identity_ok = lhs == rhs && lhs == g_on_curve;
    if (!out.identity_ok) throw Error(ErrorCode::internal, "curve parametrization identity failed");
    return out;
}

std::size_t omega_parameter_count(std::size_t r, unsigned d) { return (2 * d - 2) + (r - 2 * d + 1) + 1; }

CoverPoint omega_map(const Poly& b, std::span<const Scalar> eta_params, const ProjPoint& xi, const Scalar& tau) {
    const DoubleCover cover(b);
    const unsigned d = cover.half_degree();
    if (eta_params.size() != 2 * d - 2)
        throw Error(ErrorCode::usage, "expected " + std::to_string(2 * d - 2) + " eta parameters");
    std::vector<Scalar> eta(b.nvars(), Scalar(b.field()));
    eta[0] = Scalar::from_int(b.field(), 1);
    std::copy(eta_params.begin(), eta_params.end(), eta.begin() + 1);
    const ContactReport report = contact_analysis(b, ProjPoint(std::move(eta)), xi);
    return parametrize_curve(cover, report).at(tau);
}

// ---------------------------------------------------------------- rank certificates

std::string to_string(RankTarget t) {
    switch (t) {
        case RankTarget::beta: return "beta";
        case RankTarget::alpha: return "alpha";
        case RankTarget::omega: return "omega";
    }
    return "?";
}

std::string RankCert::failure_bound() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", sz_degree.get_d() / static_cast<double>(p));
    return buf;
}

namespace {

// First-order jet over F_p: value plus one partial derivative per parameter.
class JetSpace {
  public:
    using Jet = std::vector<std::uint64_t>;

    JetSpace(std::uint64_t p, std::size_t params) : p_(p), n_(params + 1) {}

    Jet constant(std::uint64_t v) const {
        Jet j(n_, 0);
        j[0] = v % p_;
        return j;
    }
    Jet param(std::uint64_t v, std::size_t index) const {
        Jet j = constant(v);
        j[index + 1] = 1;
        return j;
    }
    Jet add(const Jet& a, const Jet& b) const {
        Jet out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = (a[i] + b[i]) % p_;
        return out;
    }
    void add_to(Jet& a, const Jet& b) const {
        for (std::size_t i = 0; i < n_; ++i) a[i] = (a[i] + b[i]) % p_;
    }
    void add_scaled(Jet& a, const Jet& b, std::uint64_t c) const {
        for (std::size_t i = 0; i < n_; ++i) a[i] = (a[i] + mul_mod(b[i], c, p_)) % p_;
    }
    Jet neg(const Jet& a) const {
        Jet out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = a[i] == 0 ? 0 : p_ - a[i];
        return out;
    }
    Jet sub(const Jet& a, const Jet& b) const { return add(a, neg(b)); }
    Jet mul(const Jet& a, const Jet& b) const {
        Jet out(n_);
        out[0] = mul_mod(a[0], b[0], p_);
        for (std::size_t i = 1; i < n_; ++i) out[i] = (mul_mod(a[0], b[i], p_) + mul_mod(a[i], b[0], p_)) % p_;
        return out;
    }
    Jet inv(const Jet& a) const {
        const std::uint64_t iv = inv_mod(a[0], p_);
        const std::uint64_t m = p_ - mul_mod(iv, iv, p_);
        Jet out(n_);
        out[0] = iv;
        for (std::size_t i = 1; i < n_; ++i) out[i] = mul_mod(a[i], m, p_);
        return out;
    }
    Jet pow(Jet a, unsigned e) const {
        Jet out = constant(1);
        for (unsigned k = 0; k < e; ++k) out = mul(out, a);
        return out;
    }

    /// Truncated product of series with jet coefficients.
    std::vector<Jet> series_mul(const std::vector<Jet>& a, const std::vector<Jet>& b) const {
        std::vector<Jet> out(a.size() + b.size() - 1, Jet(n_, 0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) add_to(out[i + j], mul(a[i], b[j]));
        return out;
    }

  private:
    std::uint64_t p_;
    std::size_t n_;
};

struct CertInput {
    std::uint64_t p = 0;
    unsigned d = 0;
    std::size_t r = 0;
    std::size_t params = 0;
    Matrix tangent{FieldContext::rationals(), 0, 0};  ///< kernel basis, one row per vector
    std::size_t constraint_rank = 0;
    std::vector<JetSpace::Jet> beta, alpha, omega;
};

CertInput prepare(const Poly& b, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau) {
    const Field& f = b.field();
    if (!f->is_prime()) throw Error(ErrorCode::precondition, "rank certificates need a prime field");
    const DoubleCover cover(b);
    const unsigned d = cover.half_degree();
    if (d < 2) throw Error(ErrorCode::degree, "rank certificates need degree 2d >= 4");
    const std::size_t nv = b.nvars();
    const std::size_t r = nv - 1;
    if (eta.size() != nv || xi.size() != nv) throw Error(ErrorCode::usage, "points do not match the frame");
    if (eta.pivot() != 0) throw Error(ErrorCode::precondition, "eta needs eta_0 = 1");
    for (std::size_t i = 2 * d - 1; i < nv; ++i)
        if (!eta[i].is_zero()) throw Error(ErrorCode::precondition, "eta is not in M0");
    if (!xi[0].is_zero()) throw Error(ErrorCode::precondition, "xi is not in H0");

    const std::uint64_t p = f->modulus();
    const std::size_t n_eta = 2 * d - 2;
    const std::size_t params = n_eta + (r - 1) + 1;
    const std::size_t extra = params - 1;
    JetSpace js(p, params);
    using Jet = JetSpace::Jet;

    std::vector<Jet> ej(nv), xj(nv);
    std::size_t next = n_eta;
    for (std::size_t i = 0; i < nv; ++i) {
        ej[i] = (i >= 1 && i <= n_eta) ? js.param(eta[i].residue(), i - 1) : js.constant(eta[i].residue());
        xj[i] = (i == 0 || i == xi.pivot()) ? js.constant(xi[i].residue()) : js.param(xi[i].residue(), next++);
    }

    // G(eta + t xi) as a series in t with jet coefficients
    const unsigned top = 2 * d;
    std::vector<std::vector<std::vector<Jet>>> powers(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        unsigned need = b.degree_in(i);
        powers[i].push_back({js.constant(1)});
        for (unsigned k = 1; k <= need; ++k) powers[i].push_back(js.series_mul(powers[i].back(), {ej[i], xj[i]}));
    }
    std::vector<Jet> g(top + 1, js.constant(0));
    for (const auto& [e, c] : b.terms()) {
        std::vector<Jet> acc{js.constant(c.residue())};
        for (std::size_t i = 0; i < nv; ++i)
            if (e[i] > 0) acc = js.series_mul(acc, powers[i][e[i]]);
        for (std::size_t k = 0; k < acc.size() && k <= top; ++k) js.add_to(g[k], acc[k]);
    }

    for (unsigned s = 0; s <= 2 * d - 2; ++s)
        if (g[s][0] != 0) throw Error(ErrorCode::precondition, "xi is not on the polars of B at eta");
    const Jet& a = g[2 * d - 1];
    const Jet& c = g[2 * d];
    if (a[0] == 0 || c[0] == 0) throw Error(ErrorCode::resample, "sample has degenerate contact");

    Matrix cons(f, 2 * d - 2, params);
    for (unsigned s = 1; s <= 2 * d - 2; ++s)
        for (std::size_t k = 0; k < params; ++k)
            cons(s - 1, k) = Scalar::from_int(f, static_cast<long long>(g[s][k + 1]));
    CertInput in;
    in.p = p;
    in.d = d;
    in.r = r;
    in.params = params;
    in.constraint_rank = cons.rank();
    if (in.constraint_rank != 2 * d - 2)
        throw Error(ErrorCode::resample, "constraint linearization has rank " + std::to_string(in.constraint_rank));
    in.tangent = Matrix::from_rows(f, cons.nullspace());

    const Jet tb = js.neg(js.mul(a, js.inv(c)));
    const Jet tj = js.param(tau.residue(), extra);
    const Jet den = js.sub(c, js.mul(tj, tj));
    if (den[0] == 0) throw Error(ErrorCode::resample, "tau hits a pole of the curve parametrization");
    const Jet t_om = js.neg(js.mul(a, js.inv(den)));
    for (std::size_t i = 1; i < nv; ++i) {
        in.beta.push_back(js.add(ej[i], js.mul(tb, xj[i])));
        in.alpha.push_back(js.add(ej[i], js.mul(tj, xj[i])));
        in.omega.push_back(js.add(ej[i], js.mul(t_om, xj[i])));
    }
    in.omega.push_back(js.mul(tj, js.pow(t_om, d)));
    return in;
}

RankCert certify(const CertInput& in, RankTarget which, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau) {
    const Field& f = eta.field();
    const auto& rows = which == RankTarget::beta ? in.beta : which == RankTarget::alpha ? in.alpha : in.omega;
    const Matrix& k = in.tangent;
    Matrix jac(f, rows.size(), k.rows());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t col = 0; col < k.rows(); ++col) {
            Scalar acc(f);
            for (std::size_t pidx = 0; pidx < in.params; ++pidx)
                if (rows[i][pidx + 1] != 0)
                    acc += Scalar::from_int(f, static_cast<long long>(rows[i][pidx + 1])) * k(col, pidx);
            jac(i, col) = acc;
        }
    RankCert cert;
    cert.which = which;
    cert.eta = eta.to_strings();
    cert.xi = xi.to_strings();
    cert.tau = tau.to_string();
    cert.p = in.p;
    cert.jacobian = jac;
    cert.constraint_rank = in.constraint_rank;
    cert.tangent_dim = k.rows();
    cert.rank = jac.rank();
    cert.rank_alt = jac.rank_by_columns();
    cert.expected = which == RankTarget::beta ? in.r - 1 : in.r;
    cert.pass = cert.rank == cert.expected && cert.rank_alt == cert.expected;
    // entries are rational of numerator degree <= 4d+1 in the sample; the
    // kernel basis adds (2d-2)(2d-1) per column through Cramer's rule
    const unsigned long cons = static_cast<unsigned long>((2 * in.d - 2) * (2 * in.d - 1));
    cert.sz_degree = mpz_class(static_cast<unsigned long>(cert.expected)) * (4 * in.d + 1 + cons) + cons;
    return cert;
}

}  // namespace

RankCert rank_certificate(const Poly& b, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau,
                          RankTarget which) {
    return certify(prepare(b, eta, xi, tau), which, eta, xi, tau);
}

std::vector<RankCert> rank_certificates(const Poly& b, const ProjPoint& eta, const ProjPoint& xi, const Scalar& tau) {
    const CertInput in = prepare(b, eta, xi, tau);
    return {certify(in, RankTarget::beta, eta, xi, tau), certify(in, RankTarget::alpha, eta, xi, tau),
            certify(in, RankTarget::omega, eta, xi, tau)};
}

// ---------------------------------------------------------------- witness

bool WitnessReport::pass() const {
    return triangular && unique && solution_index == 2 * d - 2 && multiplicity == expected_multiplicity &&
           eta_on_bstar && beta_on_bstar && beta_on_polars;
}

WitnessReport specialization_witness(unsigned d) {
    if (d < 2) throw Error(ErrorCode::precondition, "witness needs d >= 2");
    const Field f = FieldContext::rationals();
    const std::size_t q = 2 * d - 2;
    const std::size_t r = 2 * d;
    const FramePtr frame = Frame::adapted(q, r);
    const Scalar one = Scalar::from_int(f, 1);

    Poly bstar(f, frame);
    auto add = [&](std::size_t z, unsigned zexp, unsigned yexp) {
        Exponent e(r + 1, 0);
        e[z] = zexp;
        e[r] = yexp;
        bstar.add_term(e, one);
    };
    add(2 * d - 3, 2 * d - 1, 1);
    for (unsigned k = 2; k <= 2 * d - 2; ++k) add(k - 2, k, 2 * d - k);
    bstar.mark_homogeneous(2 * d);

    const ProjPoint beta = basis_point(f, r, r);
    const FramePtr eta_frame = Frame::indexed("eta", 2 * d - 1);
    std::vector<Poly> restrict_m0;
    for (std::size_t i = 0; i <= r; ++i)
        restrict_m0.push_back(i <= 2 * d - 2 ? Poly::variable(f, eta_frame, i) : Poly(f, eta_frame));

    WitnessReport out{d, r, q, bstar, beta, beta, {}, false, false, 0, 1, 1, false, false, false, ""};
    std::set<std::size_t> constrained;
    out.triangular = true;
    for (unsigned j = 1; j <= 2 * d - 2; ++j) {
        FiberCondition fc;
        fc.j = j;
        fc.condition = directional_power(bstar, beta.coords(), j).substitute(restrict_m0);
        if (fc.condition.term_count() == 1) {
            const Exponent& e = fc.condition.leading_exponent();
            std::vector<std::size_t> vars;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) vars.push_back(i);
            if (vars.size() == 1) {
                fc.pure_power = true;
                fc.coordinate = vars[0];
                fc.exponent = e[vars[0]];
            }
        }
        if (!fc.pure_power || !constrained.insert(fc.coordinate).second) out.triangular = false;
        if (fc.pure_power) out.multiplicity *= fc.exponent;
        out.fiber_system.push_back(std::move(fc));
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i <= 2 * d - 2; ++i)
        if (!constrained.count(i)) free.push_back(i);
    out.unique = out.triangular && free.size() == 1;
    if (!out.unique) out.multiplicity = 0;
    for (unsigned k = 2; k <= 2 * d - 1; ++k) out.expected_multiplicity *= k;

    if (out.unique) {
        out.solution_index = free.front();
        out.eta_star = basis_point(f, r, out.solution_index);
        out.eta_on_bstar = bstar.evaluate(out.eta_star.coords()).is_zero();
        out.beta_on_bstar = bstar.evaluate(beta.coords()).is_zero();
        out.beta_on_polars = true;
        for (unsigned j = 1; j <= 2 * d - 2; ++j)
            if (!polar(bstar, out.eta_star, j).evaluate(beta.coords()).is_zero()) out.beta_on_polars = false;
        // the one-based reading of the marked place
        const ProjPoint alt = basis_point(f, r, 2 * d - 3);
        bool alt_ok = bstar.evaluate(alt.coords()).is_zero();
        for (unsigned j = 1; j <= 2 * d - 2 && alt_ok; ++j)
            if (!polar(bstar, alt, j).evaluate(beta.coords()).is_zero()) alt_ok = false;
        out.indexing_note = "eta* = e_" + std::to_string(out.solution_index) +
                            " (zero-based place 2d-2); the one-based reading e_" + std::to_string(2 * d - 3) +
                            (alt_ok ? " also satisfies" : " violates") + " the fiber system";
    } else {
        out.indexing_note = "fiber system has " + std::to_string(free.size()) + " free coordinates";
    }
    return out;
}

}  // namespace polarcover
