#include "polarcover/uniroot.hpp"

#include <gmp.h>

#include <algorithm>

#include "polarcover/errors.hpp"

namespace polarcover {

namespace {

using Dense = std::vector<std::uint64_t>;

void trim(Dense& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Dense poly_mod(Dense a, const Dense& b, std::uint64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t inv = inv_mod(b.back(), p);
    while (a.size() > db) {
        const std::uint64_t c = mul_mod(a.back(), inv, p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t sub = mul_mod(c, b[i], p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Dense poly_mulmod(const Dense& a, const Dense& b, const Dense& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Dense out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
    return poly_mod(std::move(out), m, p);
}

Dense poly_powmod(Dense base, std::uint64_t e, const Dense& m, std::uint64_t p) {
    Dense result{1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1U) result = poly_mulmod(result, base, m, p);
        e >>= 1U;
        if (e > 0) base = poly_mulmod(base, base, m, p);
    }
    return poly_mod(result, m, p);
}

Dense make_monic(Dense f, std::uint64_t p) {
    trim(f);
    if (f.empty()) return f;
    const std::uint64_t inv = inv_mod(f.back(), p);
    for (auto& c : f) c = mul_mod(c, inv, p);
    return f;
}

Dense poly_gcd(Dense a, Dense b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

Dense poly_div_exact(const Dense& a, const Dense& b, std::uint64_t p) {
    Dense rem = a;
    trim(rem);
    const std::size_t db = b.size() - 1;
    Dense q(rem.size() >= b.size() ? rem.size() - db : 0, 0);
    const std::uint64_t inv = inv_mod(b.back(), p);
    while (rem.size() > db) {
        const std::uint64_t c = mul_mod(rem.back(), inv, p);
        const std::size_t shift = rem.size() - 1 - db;
        q[shift] = c;
        for (std::size_t i = 0; i <= db; ++i) rem[shift + i] = (rem[shift + i] + p - mul_mod(c, b[i], p)) % p;
        trim(rem);
    }
    return q;
}

void split_roots(const Dense& g, std::uint64_t p, std::uint64_t& shift, std::vector<std::uint64_t>& out) {
    const std::size_t deg = g.size() - 1;
    if (deg == 0) return;
    if (deg == 1) {
        // x + c  ->  root -c
        out.push_back((p - mul_mod(g[0], inv_mod(g[1], p), p)) % p);
        return;
    }
    for (;;) {
        // gcd((x + a)^((p-1)/2) - 1, g) splits g with probability about 1/2
        const std::uint64_t a = shift++ % p;
        Dense h = poly_powmod(Dense{a, 1}, (p - 1) / 2, g, p);
        if (h.empty()) h = Dense{0};
        h[0] = (h[0] + p - 1) % p;
        Dense d = poly_gcd(g, h, p);
        if (d.size() > 1 && d.size() < g.size()) {
            split_roots(d, p, shift, out);
            split_roots(make_monic(poly_div_exact(g, d, p), p), p, shift, out);
            return;
        }
    }
}

// Number of times (x - root) divides f, dividing it out in place.
template <class Eval, class Deflate>
unsigned strip_root(Eval&& is_root, Deflate&& deflate) {
    unsigned m = 0;
    while (is_root()) {
        deflate();
        ++m;
    }
    return m;
}

std::vector<RootMultiplicity> roots_prime(const Poly& residual) {
    const Field& f = residual.field();
    const std::uint64_t p = f->modulus();
    std::vector<Scalar> coeffs = dense_coefficients(residual);
    Dense dense;
    for (const auto& c : coeffs) dense.push_back(c.residue());
    std::vector<RootMultiplicity> out;
    for (std::uint64_t root : roots_mod_p(dense, p)) {
        Dense work = dense;
        const Dense lin{(p - root) % p, 1};
        unsigned m = strip_root(
            [&] {
                std::uint64_t v = 0;
                for (std::size_t i = work.size(); i-- > 0;) v = (mul_mod(v, root, p) + work[i]) % p;
                return !work.empty() && v == 0;
            },
            [&] { work = poly_div_exact(work, lin, p); });
        out.push_back({Scalar::from_int(f, static_cast<long long>(root)), m});
    }
    return out;
}

std::vector<mpz_class> divisors_of(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, unsigned>> factors;
    for (unsigned long d = 2; d <= 1000000 && mpz_class(d) * d <= n; ++d) {
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        if (k > 0) factors.emplace_back(mpz_class(d), k);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw Error(ErrorCode::usage, "rational root search: coefficient too large to factor");
        factors.emplace_back(n, 1);
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [prime, k] : factors) {
        const std::size_t base = divs.size();
        mpz_class pw = 1;
        for (unsigned i = 1; i <= k; ++i) {
            pw *= prime;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
        }
    }
    return divs;
}

std::vector<RootMultiplicity> roots_rational(const Poly& residual) {
    const Field& f = residual.field();
    std::vector<Scalar> coeffs = dense_coefficients(residual);
    mpz_class lcm = 1;
    for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : coeffs) ints.push_back(mpz_class(c.rational() * lcm));
    if (ints.size() < 2) return {};
    std::vector<mpq_class> candidates;
    for (const auto& u : divisors_of(ints.front()))
        for (const auto& v : divisors_of(ints.back())) {
            candidates.emplace_back(u, v);
            candidates.emplace_back(-u, v);
        }
    for (auto& c : candidates) c.canonicalize();
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<RootMultiplicity> out;
    for (const auto& cand : candidates) {
        std::vector<mpq_class> work(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) work[i] = coeffs[i].rational();
        unsigned m = strip_root(
            [&] {
                if (work.size() < 2) return false;
                mpq_class v = 0;
                for (std::size_t i = work.size(); i-- > 0;) v = v * cand + work[i];
                return v == 0;
            },
            [&] {
                // synthetic division by (x - cand)
                std::vector<mpq_class> q(work.size() - 1);
                mpq_class carry = 0;
                for (std::size_t i = work.size(); i-- > 1;) {
                    carry = carry * cand + work[i];
                    q[i - 1] = carry;
                }
                work = std::move(q);
            });
        if (m > 0) out.push_back({Scalar::from_mpq(f, cand), m});
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> roots_mod_p(std::vector<std::uint64_t> f, std::uint64_t p) {
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() < 2) return {};
    Dense monic = make_monic(std::move(f), p);
    Dense xp = poly_powmod(Dense{0, 1}, p, monic, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;
    Dense g = poly_gcd(monic, xp, p);
    std::vector<std::uint64_t> out;
    std::uint64_t shift = 1;
    split_roots(g, p, shift, out);
    std::sort(out.begin(), out.end());
    return out;
}

UniRootData uni_root_data(const Poly& a) {
    if (a.nvars() != 1) throw Error(ErrorCode::usage, "uni_root_data needs a univariate polynomial");
    if (a.is_zero()) throw Error(ErrorCode::identically_zero, "polynomial is identically zero");
    UniRootData out{a, a.order_in(0), Poly(a.field(), a.frame()), {}, false};
    for (const auto& [e, c] : a.terms()) out.residual.add_term(Exponent{e[0] - out.order_at_zero}, c);
    if (out.residual.total_degree() > 0) {
        if (a.field()->is_prime()) {
            out.roots = roots_prime(out.residual);
            out.roots_searched = true;
        } else if (a.field()->is_rationals()) {
            out.roots = roots_rational(out.residual);
            out.roots_searched = true;
        }
    } else {
        out.roots_searched = !a.field()->is_function();
    }
    return out;
}

}  // namespace polarcover
