#include "polarcover/polar.hpp"

#include <algorithm>
#include <functional>

#include "polarcover/bounds.hpp"
#include "polarcover/errors.hpp"

namespace polarcover {

namespace {

unsigned form_degree(const Poly& g) {
    if (g.is_zero()) throw Error(ErrorCode::precondition, "zero polynomial has no polars");
    if (!g.is_homogeneous()) throw Error(ErrorCode::precondition, "polars need a homogeneous form");
    return static_cast<unsigned>(g.total_degree());
}

unsigned half_degree_of(const Poly& g) {
    const unsigned n = form_degree(g);
    if (n % 2 != 0 || n < 4) throw Error(ErrorCode::degree, "expected an even degree 2d >= 4, got " + std::to_string(n));
    return n / 2;
}

Scalar factorial(const Field& f, unsigned n) {
    Scalar out = Scalar::from_int(f, 1);
    for (unsigned k = 2; k <= n; ++k) out *= Scalar::from_int(f, k);
    return out;
}

Poly constant_poly(const Poly& like, const Scalar& c) { return Poly::constant(like.field(), like.frame(), c); }

bool all_zero(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace

Poly polar(const Poly& g, std::span<const Scalar> eta, unsigned j) {
    const unsigned n = form_degree(g);
    if (j < 1 || j > n)
        throw Error(ErrorCode::degree, "polar order " + std::to_string(j) + " outside 1.." + std::to_string(n));
    const std::size_t nv = g.nvars();
    if (eta.size() != nv) throw Error(ErrorCode::usage, "base point does not match the frame");
    const Field& f = g.field();

    std::vector<std::vector<Scalar>> binom(n + 1);
    for (unsigned a = 0; a <= n; ++a)
        for (unsigned b = 0; b <= a; ++b) binom[a].push_back(Scalar::from_mpz(f, binomial(a, b)));
    std::vector<std::vector<Scalar>> eta_pow(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        eta_pow[i].push_back(Scalar::from_int(f, 1));
        for (unsigned k = 1; k <= n; ++k) eta_pow[i].push_back(eta_pow[i].back() * eta[i]);
    }

    Poly out(f, g.frame());
    Exponent alpha(nv, 0);
    std::vector<unsigned> suffix(nv + 1, 0);
    for (const auto& [e, c] : g.terms()) {
        for (std::size_t i = nv; i-- > 0;) suffix[i] = suffix[i + 1] + e[i];
        // alpha <= e with |alpha| = j; a zero eta_i forces alpha_i = e_i
        std::function<void(std::size_t, unsigned, const Scalar&)> rec = [&](std::size_t i, unsigned left,
                                                                             const Scalar& acc) {
            if (i == nv) {
                if (left == 0) out.add_term(alpha, acc);
                return;
            }
            if (left > suffix[i]) return;
            const unsigned lo = eta[i].is_zero() ? e[i] : 0;
            const unsigned hi = std::min(e[i], left);
            for (unsigned a = lo; a <= hi; ++a) {
                alpha[i] = a;
                rec(i + 1, left - a, acc * binom[e[i]][a] * eta_pow[i][e[i] - a]);
            }
            alpha[i] = 0;
        };
        rec(0, j, c);
    }
    out = out * factorial(f, j);
    out.mark_homogeneous(j);
    return out;
}

Poly polar(const Poly& g, const ProjPoint& eta, unsigned j) { return polar(g, std::span<const Scalar>(eta.coords()), j); }

Poly directional_power(const Poly& g, std::span<const Scalar> x, unsigned j) {
    if (x.size() != g.nvars()) throw Error(ErrorCode::usage, "direction does not match the frame");
    Poly cur = g;
    for (unsigned k = 0; k < j; ++k) {
        Poly next(g.field(), g.frame());
        for (std::size_t i = 0; i < g.nvars(); ++i)
            if (!x[i].is_zero()) next += cur.derivative(i) * x[i];
        cur = std::move(next);
    }
    return cur;
}

bool PolarSystem::contains(std::span<const Scalar> x) const {
    return std::all_of(polars.begin(), polars.end(), [&](const Poly& p) { return p.evaluate(x).is_zero(); });
}

PolarSystem f_eta(const Poly& b, const ProjPoint& eta) {
    const unsigned d = half_degree_of(b);
    if (eta.size() != b.nvars()) throw Error(ErrorCode::usage, "base point does not match the frame");
    if (!b.evaluate(eta.coords()).is_zero()) throw Error(ErrorCode::precondition, "base point is not on B");
    PolarSystem sys{eta, {}, b};
    for (unsigned j = 1; j <= 2 * d - 2; ++j) sys.polars.push_back(polar(b, eta, j));
    return sys;
}

// ---------------------------------------------------------------- Phi

bool PhiDecomposition::in_f_star(std::span<const Scalar> x) const {
    if (x.size() != transformed.nvars() || !x[0].is_zero()) return false;
    for (unsigned s = 1; s <= 2 * d - 2; ++s)
        if (!phi(s).evaluate(x).is_zero()) return false;
    return true;
}

PhiDecomposition phi_decomposition(const Poly& b, const ProjPoint& eta, std::size_t q) {
    const unsigned d = half_degree_of(b);
    const std::size_t nv = b.nvars();
    const std::size_t r = nv - 1;
    if (eta.size() != nv) throw Error(ErrorCode::usage, "base point does not match the frame");
    if (q < 2 * d - 2 || q >= r)
        throw Error(ErrorCode::precondition, "need 2d-2 <= q < r, got q = " + std::to_string(q));
    if (eta[0].is_zero()) throw Error(ErrorCode::precondition, "eta_0 = 0: eta cannot be moved to (1,0,...,0)");
    for (std::size_t i = 2 * d - 1; i < nv; ++i)
        if (!eta[i].is_zero()) throw Error(ErrorCode::precondition, "eta is not in M0");
    if (!contains_coordinate_plane(b, q)) throw Error(ErrorCode::precondition, "B does not contain L0");

    const Field& f = b.field();
    Matrix m = Matrix::identity(f, nv);
    for (std::size_t i = 1; i <= 2 * d - 2; ++i) m(i, 0) = -eta[i];
    Transform t(std::move(m));
    Poly gt = t.apply(b);

    PhiDecomposition out{t, gt, {}, q, d, false, true};
    for (unsigned s = 1; s <= 2 * d; ++s) {
        Poly phi = gt.coefficient_of(0, 2 * d - s);
        phi.mark_homogeneous(s);
        out.phis.push_back(std::move(phi));
    }
    Poly rebuilt(f, b.frame());
    const Poly z0 = Poly::variable(f, b.frame(), 0);
    for (unsigned s = 1; s <= 2 * d; ++s) rebuilt += z0.pow(2 * d - s) * out.phi(s);
    out.residual_ok = gt.coefficient_of(0, 2 * d).is_zero() && rebuilt == gt;
    for (unsigned s = 1; s <= 2 * d - 2; ++s)
        for (const auto& [e, c] : out.phi(s).terms())
            if (std::all_of(e.begin() + static_cast<long>(q) + 1, e.end(), [](unsigned k) { return k == 0; }))
                out.pure_tilde_free = false;
    return out;
}

// ---------------------------------------------------------------- contact

std::string ContactFlags::name() const {
    if (line_in_B) return "line_in_B";
    if (xi_on_B) return "xi_on_B";
    if (beta_equals_eta) return "beta_equals_eta";
    return "";
}

ContactReport contact_analysis(const Poly& b, const ProjPoint& eta, const ProjPoint& xi) {
    const unsigned d = half_degree_of(b);
    if (eta.size() != b.nvars() || xi.size() != b.nvars())
        throw Error(ErrorCode::usage, "points do not match the frame");
    if (!b.evaluate(eta.coords()).is_zero()) throw Error(ErrorCode::precondition, "eta is not on B");
    Poly g = line_restrict(b, eta, xi);
    ContactReport out{eta, xi, g, std::nullopt, -1, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}, d};
    if (g.is_zero()) {
        out.flags.line_in_B = true;
        return out;
    }
    for (unsigned k = 1; k <= 2 * d - 2; ++k)
        if (!g.coefficient(Exponent{k}).is_zero())
            throw Error(ErrorCode::precondition, "xi is not on the polars of B at eta");
    out.restricted = uni_root_data(g);
    out.contact_order = static_cast<int>(out.restricted->order_at_zero);
    out.a = g.coefficient(Exponent{2 * d - 1});
    out.b = g.coefficient(Exponent{2 * d});
    if (out.b->is_zero()) {
        out.flags.xi_on_B = true;
        return out;
    }
    if (out.a->is_zero()) {
        out.flags.beta_equals_eta = true;
        return out;
    }
    out.t_beta = -*out.a / *out.b;
    std::vector<Scalar> beta;
    for (std::size_t i = 0; i < eta.size(); ++i) beta.push_back(eta[i] + *out.t_beta * xi[i]);
    out.beta = ProjPoint(std::move(beta));
    if (!b.evaluate(out.beta->coords()).is_zero()) throw Error(ErrorCode::internal, "residual point is off B");
    return out;
}

// ---------------------------------------------------------------- resultants

Poly resultant(const Poly& f, const Poly& g, std::size_t var) {
    const unsigned m = f.degree_in(var);
    const unsigned n = g.degree_in(var);
    if (f.is_zero() || g.is_zero()) return Poly(f.field(), f.frame());
    if (m == 0) return f.pow(n);
    if (n == 0) return g.pow(m);
    const std::size_t size = m + n;
    std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size, Poly(f.field(), f.frame())));
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned k = 0; k <= m; ++k) s[i][i + m - k] = f.coefficient_of(var, k);
    for (std::size_t i = 0; i < m; ++i)
        for (unsigned k = 0; k <= n; ++k) s[n + i][i + n - k] = g.coefficient_of(var, k);

    bool negate = false;
    Poly prev = constant_poly(f, Scalar::from_int(f.field(), 1));
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (s[k][k].is_zero()) {
            std::size_t i = k + 1;
            while (i < size && s[i][k].is_zero()) ++i;
            if (i == size) return Poly(f.field(), f.frame());
            std::swap(s[k], s[i]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j)
                s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]).divide_exact(prev);
            s[i][k] = Poly(f.field(), f.frame());
        }
        prev = s[k][k];
    }
    Poly det = s[size - 1][size - 1];
    det.clear_homogeneous();
    return negate ? -det : det;
}

// ---------------------------------------------------------------- point search

std::string SearchStats::to_string() const {
    return "trials=" + std::to_string(trials) + " phi1_degenerate=" + std::to_string(phi1_degenerate) +
           " phi2_inconsistent=" + std::to_string(phi2_inconsistent) + " no_root=" + std::to_string(no_root) +
           " rejected=" + std::to_string(rejected);
}

namespace {

using Values = std::vector<Scalar>;

Poly fix_variables(const Poly& p, const std::vector<std::size_t>& vars, const Values& values) {
    std::vector<Poly> images;
    images.reserve(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) images.push_back(Poly::variable(p.field(), p.frame(), i));
    for (std::size_t k = 0; k < vars.size(); ++k) images[vars[k]] = constant_poly(p, values[k]);
    return p.substitute(images);
}

std::vector<Scalar> univariate_roots(const Poly& p, std::size_t var) {
    const std::uint64_t mod = p.field()->modulus();
    std::vector<std::uint64_t> dense(p.degree_in(var) + 1, 0);
    for (const auto& [e, c] : p.terms()) dense[e[var]] = c.residue();
    std::vector<Scalar> out;
    for (std::uint64_t root : roots_mod_p(dense, mod)) out.push_back(Scalar::from_int(p.field(), static_cast<long long>(root)));
    return out;
}

// All F_p solutions of eqs in vars (other frame variables absent); free
// variables of an underdetermined system get random values.
std::vector<Values> solve_system(std::vector<Poly> eqs, std::vector<std::size_t> vars, Rng& rng, const Field& f) {
    std::vector<Poly> live;
    for (auto& e : eqs) {
        if (e.is_zero()) continue;
        if (e.is_constant()) return {};
        live.push_back(std::move(e));
    }
    if (vars.empty()) return {Values{}};
    const std::size_t v = vars.back();
    vars.pop_back();
    std::vector<Poly> with_v;
    std::vector<Poly> reduced;
    for (auto& e : live) (e.degree_in(v) > 0 ? with_v : reduced).push_back(std::move(e));
    if (with_v.empty()) {
        auto partial = solve_system(std::move(reduced), vars, rng, f);
        for (auto& sol : partial) sol.push_back(random_scalar(f, rng));
        return partial;
    }
    auto pivot_it = std::min_element(with_v.begin(), with_v.end(),
                                     [v](const Poly& a, const Poly& b) { return a.degree_in(v) < b.degree_in(v); });
    std::swap(*pivot_it, with_v.front());
    for (std::size_t k = 1; k < with_v.size(); ++k) reduced.push_back(resultant(with_v.front(), with_v[k], v));
    std::vector<Values> out;
    for (auto& sol : solve_system(std::move(reduced), vars, rng, f)) {
        std::vector<Poly> uni;
        for (const auto& e : with_v) uni.push_back(fix_variables(e, vars, sol));
        auto first = std::find_if(uni.begin(), uni.end(), [](const Poly& p) { return !p.is_zero(); });
        if (first == uni.end()) {
            sol.push_back(random_scalar(f, rng));
            out.push_back(std::move(sol));
            continue;
        }
        if (first->is_constant()) continue;
        for (const Scalar& root : univariate_roots(*first, v)) {
            const Scalar pt[1] = {root};
            const std::vector<std::size_t> only{v};
            bool ok = std::all_of(uni.begin(), uni.end(),
                                  [&](const Poly& p) { return fix_variables(p, only, Values(pt, pt + 1)).is_zero(); });
            if (!ok) continue;
            Values ext = sol;
            ext.push_back(root);
            out.push_back(std::move(ext));
        }
    }
    return out;
}

std::optional<Values> search_once(const PhiDecomposition& dec, Rng& rng, SearchStats& stats) {
    const Poly& gt = dec.transformed;
    const Field& f = gt.field();
    const std::size_t nv = gt.nvars();
    const std::size_t q = dec.q;
    const unsigned top = 2 * dec.d - 2;
    Values pt(nv, Scalar(f));

    // Y from the linear Phi_1
    std::vector<std::size_t> y_support;
    Values y_coeff(nv, Scalar(f));
    for (const auto& [e, c] : dec.phi(1).terms()) {
        const auto i = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1U) - e.begin());
        if (i <= q) throw Error(ErrorCode::internal, "Phi_1 involves a Z~ variable");
        y_coeff[i] = c;
        y_support.push_back(i);
    }
    for (std::size_t i = q + 1; i < nv; ++i) pt[i] = random_scalar(f, rng);
    if (y_support.empty()) {
        ++stats.phi1_degenerate;
    } else {
        const std::size_t piv = y_support[rng.below(y_support.size())];
        Scalar acc(f);
        for (std::size_t i = q + 1; i < nv; ++i)
            if (i != piv) acc += y_coeff[i] * pt[i];
        pt[piv] = -acc / y_coeff[piv];
    }
    if (all_zero(std::span<const Scalar>(pt).subspan(q + 1))) {
        ++stats.rejected;
        return std::nullopt;
    }

    std::vector<std::size_t> y_vars;
    for (std::size_t i = q + 1; i < nv; ++i) y_vars.push_back(i);
    y_vars.insert(y_vars.begin(), 0);
    Values y_vals(pt.begin() + static_cast<long>(q) + 1, pt.end());
    y_vals.insert(y_vals.begin(), Scalar(f));
    std::vector<Poly> rest;
    for (unsigned s = 2; s <= top; ++s) rest.push_back(fix_variables(dec.phi(s), y_vars, y_vals));

    // Phi_2 is now affine in Z~
    const Poly& p2 = rest.front();
    if (p2.total_degree() > 1) throw Error(ErrorCode::internal, "Phi_2 is not affine once Y is fixed");
    std::vector<std::size_t> lin_support;
    Values lin(nv, Scalar(f));
    for (std::size_t i = 1; i <= q; ++i) {
        Exponent e(nv, 0);
        e[i] = 1;
        lin[i] = p2.coefficient(e);
        if (!lin[i].is_zero()) lin_support.push_back(i);
    }
    const Scalar c0 = p2.constant_term();
    if (lin_support.empty() && !c0.is_zero()) {
        ++stats.phi2_inconsistent;
        return std::nullopt;
    }
    std::optional<std::size_t> pivot;
    if (!lin_support.empty()) pivot = lin_support[rng.below(lin_support.size())];

    std::vector<std::size_t> others;
    for (std::size_t i = 1; i <= q; ++i)
        if (i != pivot) others.push_back(i);
    for (std::size_t k = others.size(); k > 1; --k) std::swap(others[k - 1], others[rng.below(k)]);
    const std::size_t hold = std::min<std::size_t>(top >= 4 ? top - 2 : 0, others.size());
    std::vector<std::size_t> held(others.begin(), others.begin() + static_cast<long>(hold));
    std::vector<std::size_t> randomized(others.begin() + static_cast<long>(hold), others.end());
    std::sort(held.begin(), held.end());
    for (std::size_t i : randomized) pt[i] = random_scalar(f, rng);

    std::vector<Poly> images;
    for (std::size_t i = 0; i < nv; ++i) images.push_back(Poly::variable(f, gt.frame(), i));
    for (std::size_t i : randomized) images[i] = constant_poly(gt, pt[i]);
    if (pivot) {
        Poly affine = constant_poly(gt, c0);
        for (std::size_t i : randomized) affine += constant_poly(gt, lin[i] * pt[i]);
        for (std::size_t i : held) affine += Poly::variable(f, gt.frame(), i) * lin[i];
        images[*pivot] = affine * (-lin[*pivot].inverse());
    }
    std::vector<Poly> eqs;
    for (std::size_t k = 1; k < rest.size(); ++k) eqs.push_back(rest[k].substitute(images));

    auto sols = solve_system(std::move(eqs), held, rng, f);
    if (sols.empty()) {
        ++stats.no_root;
        return std::nullopt;
    }
    const Values& sol = sols[rng.below(sols.size())];
    for (std::size_t k = 0; k < held.size(); ++k) pt[held[k]] = sol[k];
    if (pivot) {
        Scalar acc = c0;
        for (std::size_t i = 1; i <= q; ++i)
            if (i != *pivot) acc += lin[i] * pt[i];
        pt[*pivot] = -acc / lin[*pivot];
    }
    return pt;
}

}  // namespace

ProjPoint find_point_f_eta_star(const PhiDecomposition& dec, Rng& rng, unsigned max_trials, SearchStats* stats_out) {
    if (!dec.transformed.field()->is_prime()) throw Error(ErrorCode::precondition, "point search needs a prime field");
    SearchStats stats;
    const std::size_t q = dec.q;
    for (unsigned trial = 0; trial < max_trials; ++trial) {
        ++stats.trials;
        auto pt = search_once(dec, rng, stats);
        if (!pt) continue;
        const bool off_l0 = !all_zero(std::span<const Scalar>(*pt).subspan(q + 1));
        if (dec.in_f_star(*pt) && off_l0 && !dec.phi(2 * dec.d).evaluate(*pt).is_zero() &&
            !dec.transformed.evaluate(*pt).is_zero()) {
            if (stats_out) *stats_out = stats;
            return ProjPoint(std::move(*pt));
        }
        ++stats.rejected;
    }
    if (stats_out) *stats_out = stats;
    throw Error(ErrorCode::sampling_failure, "no point of F*_eta found: " + stats.to_string());
}

}  // namespace polarcover
