#include "polarcover/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "polarcover/errors.hpp"

namespace polarcover {

MultiDegree::MultiDegree(std::vector<unsigned> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw Error(ErrorCode::usage, "multidegree must be nonempty");
    if (std::any_of(degrees_.begin(), degrees_.end(), [](unsigned d) { return d == 0; }))
        throw Error(ErrorCode::usage, "multidegree entries must be positive");
    std::sort(degrees_.begin(), degrees_.end());
}

MultiDegree MultiDegree::staircase(unsigned n) {
    std::vector<unsigned> d(n);
    for (unsigned i = 0; i < n; ++i) d[i] = i + 1;
    return MultiDegree(std::move(d));
}

bool MultiDegree::is_excluded() const {
    if (degrees_.size() < 2 || degrees_.back() != 2) return false;
    return std::all_of(degrees_.begin(), degrees_.end() - 1, [](unsigned d) { return d == 1; });
}

std::string MultiDegree::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
    os << ")";
    return os.str();
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

namespace {

void check_exclusion(const MultiDegree& dbar) {
    if (dbar.is_excluded())
        throw Error(ErrorCode::exclusion, "multidegree " + dbar.to_string() +
                                              " is the excluded case (1,...,1,2) of the linear-space criterion");
}

mpz_class linear_space_demand(unsigned long q, const MultiDegree& dbar) {
    mpz_class sum = 0;
    for (unsigned d : dbar.degrees()) sum += binomial(d + q, q);
    return sum;
}

}  // namespace

bool predonzan_ok(const mpz_class& r, unsigned long q, const MultiDegree& dbar) {
    check_exclusion(dbar);
    if (q == 0 || r <= q) throw Error(ErrorCode::precondition, "linear-space criterion needs 0 < q < r");
    return (r - q) * (q + 1) >= linear_space_demand(q, dbar);
}

mpz_class min_r_linear(unsigned long q, const MultiDegree& dbar) {
    check_exclusion(dbar);
    if (q == 0) throw Error(ErrorCode::precondition, "linear-space criterion needs q > 0");
    const mpz_class demand = linear_space_demand(q, dbar);
    mpz_class steps;
    mpz_cdiv_q_ui(steps.get_mpz_t(), demand.get_mpz_t(), q + 1);
    if (steps < 1) steps = 1;
    return steps + q;
}

BoundsLedger ledger(unsigned long r, unsigned long q, unsigned d, const MultiDegree& dbar) {
    if (q == 0 || r <= q) throw Error(ErrorCode::precondition, "ledger needs 0 < q < r");
    BoundsLedger out;
    out.r = r;
    out.q = q;
    out.d = d;
    out.dbar = dbar;
    mpz_class sum_ambient = 0;
    mpz_class sum_plane = 0;
    out.trdeg_identity_ok = true;
    for (unsigned dj : dbar.degrees()) {
        const mpz_class ambient = binomial(dj + r, r);
        const mpz_class plane = binomial(dj + q, q);
        out.n_j.push_back(binomial(r + dj, dj) - 1);
        out.m_j.push_back(ambient - plane - 1);
        sum_ambient += ambient;
        sum_plane += plane;
        // N_j = trdeg of the parameter space = (planes) + (fibre dimension)
        out.trdeg_identity_ok = out.trdeg_identity_ok && out.n_j.back() == binomial(q + dj, dj) + out.m_j.back();
    }
    const mpz_class grass = mpz_class(static_cast<unsigned long>(r - q)) * (q + 1);
    out.incidence_dim = grass + sum_ambient - sum_plane - static_cast<unsigned long>(dbar.size());
    out.fano_dim = grass - sum_plane;
    if (d > 0) out.fano_dim_b = grass - binomial(q + 2 * d, 2 * d);
    out.excluded = dbar.is_excluded();
    out.predonzan_ok = !out.excluded && grass >= sum_plane;
    return out;
}

std::string BoundedInt::to_string() const {
    switch (kind) {
        case Kind::exact: return value.get_str();
        case Kind::lower_bound: return ">=" + value.get_str();
        case Kind::unknown: return "unknown";
    }
    return "unknown";
}

ConstantsLedger constants(unsigned d, const std::optional<mpz_class>& c_external,
                          const std::optional<mpz_class>& q_external) {
    if (d < 3) throw Error(ErrorCode::precondition, "constants are defined only for d > 2 (got d = " +
                                                        std::to_string(d) + ")");
    ConstantsLedger out;
    out.d = d;
    out.n = 2 * d - 2;
    const mpz_class floor_q = 25 + 2 * static_cast<long>(d - 3);
    if (d == 3) {
        if (q_external && *q_external != 25)
            throw Error(ErrorCode::config, "q(dbar) for d = 3 is 25; external value " + q_external->get_str() +
                                               " contradicts it");
        out.q_dbar = BoundedInt::exact(25);
    } else if (q_external) {
        if (*q_external < floor_q)
            throw Error(ErrorCode::config, "external q(dbar) = " + q_external->get_str() +
                                               " is below the lower bound " + floor_q.get_str());
        out.q_dbar = BoundedInt::exact(*q_external);
    } else {
        out.q_dbar = BoundedInt::at_least(floor_q);
    }
    out.rho_dprime = {out.q_dbar.kind, out.q_dbar.value + 1};
    // min_r_linear is monotone in q, so a lower bound on q gives a lower bound on rho1
    out.rho1 = {out.rho_dprime.kind,
                min_r_linear(out.rho_dprime.value.get_ui(), MultiDegree::single(2 * d))};
    if (c_external) {
        out.c_dbar = BoundedInt::exact(*c_external);
        out.rho = {out.rho1.kind, std::max(*c_external, out.rho1.value) + 1};
    } else {
        out.c_dbar = BoundedInt::unknown();
        out.rho = BoundedInt::at_least(out.rho1.value + 1);
    }
    return out;
}

std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned degree) {
    std::vector<Exponent> out;
    Exponent cur(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
        cur[i] = 0;
    };
    if (nvars == 0) return out;
    rec(rec, 0, degree);
    return out;
}

mpz_class fiber_coefficient_count(unsigned long r, unsigned long q, unsigned d) {
    return binomial(r + d, d) - binomial(q + d, d);
}

bool contains_coordinate_plane(const Poly& g, std::size_t q) {
    for (const auto& [e, c] : g.terms()) {
        bool has_y = false;
        for (std::size_t i = q + 1; i < e.size(); ++i) has_y = has_y || e[i] > 0;
        if (!has_y) return false;
    }
    return true;
}

std::vector<Poly> gen_fiber_generic(const Subspace& l0, const MultiDegree& dbar, GenerationMode mode, Rng* rng) {
    const std::size_t r = l0.ambient_dim();
    const std::size_t q = l0.dim();
    if (q >= r) throw Error(ErrorCode::usage, "L0 must be a proper subspace");
    std::vector<std::size_t> idx(q + 1);
    for (std::size_t i = 0; i <= q; ++i) idx[i] = i;
    if (!(l0 == Subspace::coordinate(l0.field(), r, idx)))
        throw Error(ErrorCode::usage, "frame not adapted: L0 must be {Y_q+1 = ... = Y_r = 0}; apply adapt_frame first");
    if (mode == GenerationMode::seeded_random && rng == nullptr)
        throw Error(ErrorCode::usage, "random generation needs a seeded generator");

    const FramePtr frame = Frame::adapted(q, r);
    std::vector<std::vector<Exponent>> supports;
    std::size_t total = 0;
    for (unsigned dj : dbar.degrees()) {
        std::vector<Exponent> support;
        for (auto& e : monomials_of_degree(r + 1, dj)) {
            bool has_y = false;
            for (std::size_t i = q + 1; i <= r; ++i) has_y = has_y || e[i] > 0;
            if (has_y) support.push_back(std::move(e));
        }
        total += support.size();
        supports.push_back(std::move(support));
    }

    Field field = l0.field();
    if (mode == GenerationMode::transcendental) {
        std::vector<std::string> names;
        names.reserve(total);
        for (std::size_t j = 0; j < supports.size(); ++j)
            for (std::size_t k = 0; k < supports[j].size(); ++k)
                names.push_back("b" + std::to_string(j) + "_" + std::to_string(k));
        field = FieldContext::function_field(l0.field(), std::move(names));
    }

    std::vector<Poly> out;
    std::size_t symbol = 0;
    for (std::size_t j = 0; j < supports.size(); ++j) {
        Poly g(field, frame);
        for (const auto& e : supports[j]) {
            if (mode == GenerationMode::transcendental)
                g.add_term(e, Scalar::symbol(field, symbol++));
            else
                g.add_term(e, random_scalar(field, *rng));
        }
        g.mark_homogeneous(dbar.degrees()[j]);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace polarcover
