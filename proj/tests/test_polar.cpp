#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "polarcover/bounds.hpp"
#include "polarcover/errors.hpp"
#include "polarcover/polar.hpp"
#include "polarcover/poly_text.hpp"

using namespace polarcover;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::usage;
}

std::vector<Scalar> ints(const Field& f, std::initializer_list<long long> v) {
    std::vector<Scalar> out;
    for (long long x : v) out.push_back(Scalar::from_int(f, x));
    return out;
}

Scalar factorial(const Field& f, unsigned n) { return Scalar::from_mpz(f, oracle::fact(n)); }

struct Setup {
    Poly b;
    ProjPoint eta;
    std::size_t q;
};

// B generic through L0 = {Y = 0} in the adapted frame; eta in M0 with eta_0 = 1.
Setup adapted_setup(const Field& f, unsigned d, std::size_t r, std::size_t q, Rng& rng) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i <= q; ++i) idx.push_back(i);
    Poly b = gen_fiber_generic(Subspace::coordinate(f, r, idx), MultiDegree::single(2 * d), GenerationMode::seeded_random,
                               &rng)
                 .front();
    std::vector<Scalar> eta(r + 1, Scalar(f));
    eta[0] = Scalar::from_int(f, 1);
    for (std::size_t i = 1; i <= 2 * d - 2; ++i) eta[i] = random_scalar(f, rng, 1000);
    return {std::move(b), ProjPoint(std::move(eta)), q};
}

unsigned order_at_zero(const std::vector<Scalar>& coeffs) {
    unsigned k = 0;
    while (k < coeffs.size() && coeffs[k].is_zero()) ++k;
    return k;
}

}  // namespace

TEST_SUITE("polars") {
    TEST_CASE("tangent of a conic") {
        const Field f = FieldContext::rationals();
        const Poly g = parse_poly("X0*X1", f, Frame::indexed("X", 2));
        CHECK(to_text(polar(g, ProjPoint(ints(f, {1, 0})), 1)) == "X1");
    }

    TEST_CASE("top polar is n! G") {
        Rng rng(2);
        const Field f = FieldContext::rationals();
        const FramePtr fr = Frame::indexed("X", 4);
        for (unsigned n = 1; n <= 6; ++n) {
            const Poly g = oracle::random_form(f, fr, n, 8, rng);
            const std::vector<Scalar> eta = oracle::random_vector(f, 4, rng);
            CHECK(polar(g, eta, n) == g * factorial(f, n));
        }
    }

    TEST_CASE("degree and homogeneity errors") {
        const Field f = FieldContext::rationals();
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly g = parse_poly("X0^2*X1", f, fr);
        const std::vector<Scalar> eta = ints(f, {1, 1});
        CHECK(code_of([&] { polar(g, eta, 4); }) == ErrorCode::degree);
        CHECK(code_of([&] { polar(g, eta, 0); }) == ErrorCode::degree);
        CHECK(code_of([&] { polar(parse_poly("X0^2 + X1", f, fr), eta, 1); }) == ErrorCode::precondition);
    }

    TEST_CASE("symmetry on X0^2 X1^2") {
        Rng rng(3);
        const Field f = FieldContext::rationals();
        const Poly g = parse_poly("X0^2*X1^2", f, Frame::indexed("X", 2));
        for (int k = 0; k < 10; ++k) {
            const std::vector<Scalar> eta = oracle::random_vector(f, 2, rng), x = oracle::random_vector(f, 2, rng);
            for (unsigned j = 1; j <= 3; ++j)
                CHECK(factorial(f, 4 - j) * polar(g, eta, j).evaluate(x) == factorial(f, j) * polar(g, x, 4 - j).evaluate(eta));
        }
    }

    TEST_CASE("Taylor and symmetry identities on random forms") {
        Rng rng(4);
        for (const Field& f : {FieldContext::rationals(), FieldContext::prime(10007)}) {
            const FramePtr fr = Frame::indexed("X", 5);
            for (int k = 0; k < 20; ++k) {
                const unsigned n = 2 * (1 + static_cast<unsigned>(rng.below(3)));
                const Poly g = oracle::random_form(f, fr, n, 15, rng);
                const std::vector<Scalar> eta = oracle::random_vector(f, 5, rng), xi = oracle::random_vector(f, 5, rng);
                const std::vector<Scalar> naive = oracle::restrict_naive(g, eta, xi);
                CHECK(naive[0] == g.evaluate(eta));
                for (unsigned j = 1; j <= n; ++j) {
                    const Scalar dj = polar(g, eta, j).evaluate(xi);
                    CHECK(dj == naive[j] * factorial(f, j));
                    CHECK(directional_power(g, xi, j).evaluate(eta) == dj);
                    if (j < n) CHECK(factorial(f, n - j) * dj == factorial(f, j) * polar(g, xi, n - j).evaluate(eta));
                }
            }
        }
    }
}

TEST_SUITE("polar systems") {
    TEST_CASE("shape and the tangent form") {
        Rng rng(5);
        const Field f = FieldContext::prime(10007);
        for (unsigned d = 2; d <= 3; ++d) {
            const Setup s = adapted_setup(f, d, 2 * d + 1, 2 * d - 2, rng);
            const PolarSystem sys = f_eta(s.b, s.eta);
            REQUIRE(sys.polars.size() == 2 * d - 2);
            for (unsigned j = 1; j <= 2 * d - 2; ++j) CHECK(sys.polars[j - 1].homogeneous_flag() == j);
            CHECK(sys.half_degree() == d);
            // first polar is the gradient pairing: the tangent hyperplane at eta
            Poly tangent(f, s.b.frame());
            for (std::size_t i = 0; i < s.b.nvars(); ++i)
                tangent += Poly::variable(f, s.b.frame(), i) * s.b.derivative(i).evaluate(s.eta.coords());
            CHECK(sys.polars[0] == tangent);
        }
    }

    TEST_CASE("membership iff high contact at eta") {
        Rng rng(6);
        const Field f = FieldContext::prime(10007);
        for (int k = 0; k < 6; ++k) {
            const unsigned d = 2 + k % 2;
            const Setup s = adapted_setup(f, d, 2 * d + 2, 2 * d - 1, rng);
            const PolarSystem sys = f_eta(s.b, s.eta);
            const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
            std::vector<std::vector<Scalar>> samples;
            for (int m = 0; m < 5; ++m) samples.push_back(oracle::random_vector(f, s.b.nvars(), rng, 10006));
            for (int m = 0; m < 3; ++m) samples.push_back(find_point_f_eta_star(dec, rng, 64).coords());
            for (const auto& x : samples) {
                const unsigned ord = order_at_zero(oracle::restrict_naive(s.b, s.eta.coords(), x));
                CHECK(sys.contains(x) == (ord >= 2 * d - 1));
            }
        }
    }

    TEST_CASE("base point must lie on B") {
        const Field f = FieldContext::rationals();
        const Poly g = parse_poly("X0^4 + X1^4 + X2^4", f, Frame::indexed("X", 3));
        CHECK(code_of([&] { f_eta(g, ProjPoint(ints(f, {1, 0, 0}))); }) == ErrorCode::precondition);
    }
}

TEST_SUITE("phi decomposition") {
    TEST_CASE("Phi_s agrees with the polars on H0") {
        Rng rng(7);
        for (const Field& f : {FieldContext::rationals(), FieldContext::prime(10007)}) {
            for (unsigned d = 2; d <= 3; ++d) {
                const Setup s = adapted_setup(f, d, 2 * d + 1, 2 * d - 2, rng);
                const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
                CHECK(dec.residual_ok);
                CHECK(dec.pure_tilde_free);
                REQUIRE(dec.phis.size() == 2 * d);
                for (int m = 0; m < 5; ++m) {
                    std::vector<Scalar> x = oracle::random_vector(f, s.b.nvars(), rng);
                    x[0] = Scalar(f);
                    for (unsigned sidx = 1; sidx <= 2 * d; ++sidx)
                        CHECK(factorial(f, sidx) * dec.phi(sidx).evaluate(x) == polar(s.b, s.eta, sidx).evaluate(x));
                }
                CHECK(dec.transform.inverse().apply(dec.transformed) == s.b);
                for (unsigned sidx = 1; sidx <= 2 * d - 2; ++sidx)
                    for (const auto& [e, c] : dec.phi(sidx).terms()) {
                        unsigned ydeg = 0;
                        for (std::size_t i = s.q + 1; i < e.size(); ++i) ydeg += e[i];
                        CHECK(ydeg > 0);
                        CHECK(e[0] == 0);
                    }
            }
        }
    }

    TEST_CASE("transform is the shear moving eta to e0") {
        Rng rng(8);
        const Field f = FieldContext::prime(10007);
        const Setup s = adapted_setup(f, 3, 7, 4, rng);
        const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
        CHECK(dec.transform.apply(s.eta) == basis_point(f, 7, 0));
        for (std::size_t i = 1; i <= 4; ++i) CHECK(dec.transform.matrix()(i, 0) == -s.eta[i]);
        for (std::size_t i = 0; i <= 7; ++i)
            for (std::size_t j = 1; j <= 7; ++j) CHECK(dec.transform.matrix()(i, j) == Scalar::from_int(f, i == j));
    }

    TEST_CASE("preconditions") {
        Rng rng(9);
        const Field f = FieldContext::prime(10007);
        const Setup s = adapted_setup(f, 2, 5, 2, rng);
        CHECK(code_of([&] { phi_decomposition(s.b, s.eta, 1); }) == ErrorCode::precondition);
        CHECK(code_of([&] { phi_decomposition(s.b, s.eta, 5); }) == ErrorCode::precondition);
        CHECK(code_of([&] { phi_decomposition(s.b, basis_point(f, 5, 1), 2); }) == ErrorCode::precondition);
        // eta outside M0
        std::vector<Scalar> off = s.eta.coords();
        off[3] = Scalar::from_int(f, 1);
        CHECK(code_of([&] { phi_decomposition(s.b, ProjPoint(off), 2); }) == ErrorCode::precondition);
        // B not through L0
        const Poly plus = s.b + Poly::variable(f, s.b.frame(), 1).pow(4);
        CHECK(code_of([&] { phi_decomposition(plus, s.eta, 2); }) == ErrorCode::precondition);
    }

    TEST_CASE("transcendental coefficients are distinct linear forms") {
        const Field base = FieldContext::rationals();
        const std::size_t r = 5, q = 2;
        const Poly b = gen_fiber_generic(Subspace::coordinate(base, r, {0, 1, 2}), MultiDegree::single(4),
                                         GenerationMode::transcendental)
                           .front();
        const Field f = b.field();
        CHECK(f->symbol_count() == 111);
        std::vector<Scalar> eta;
        for (long long v : {1, 2, -3, 0, 0, 0}) eta.push_back(Scalar::from_int(f, v));
        const PhiDecomposition dec = phi_decomposition(b, ProjPoint(eta), q);
        CHECK(dec.residual_ok);
        CHECK(dec.pure_tilde_free);
        std::set<std::string> seen;
        std::size_t count = 0;
        for (unsigned s = 1; s <= 2; ++s)
            for (const auto& [e, c] : dec.phi(s).terms()) {
                CHECK(c.denominator().total_degree() == 0);
                CHECK(c.numerator().total_degree() == 1);
                const Poly num = c.numerator();
                for (const auto& [se, sc] : num.terms()) CHECK(total_degree(se) == 1);
                seen.insert(c.to_string());
                ++count;
            }
        CHECK(count > 0);
        CHECK(seen.size() == count);
    }
}

TEST_SUITE("contact") {
    TEST_CASE("plane quartic") {
        const Field f = FieldContext::rationals();
        const Poly g = parse_poly("X1^4 - X1^3*X0 + X2*X0^3", f, Frame::indexed("X", 3));
        const ContactReport rep = contact_analysis(g, basis_point(f, 2, 0), basis_point(f, 2, 1));
        CHECK_FALSE(rep.flags.any());
        CHECK(to_text(rep.restriction) == "t^4 - t^3");
        CHECK(rep.contact_order == 3);
        CHECK(rep.t_beta->is_one());
        CHECK(rep.beta->to_strings() == std::vector<std::string>{"1", "1", "0"});
        CHECK(g.evaluate(rep.beta->coords()).is_zero());
    }

    TEST_CASE("degenerate configurations raise flags") {
        Rng rng(10);
        const Field f = FieldContext::prime(10007);
        const Setup s = adapted_setup(f, 2, 5, 2, rng);
        const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
        const ProjPoint xi = find_point_f_eta_star(dec, rng, 64);
        const ContactReport clean = contact_analysis(s.b, s.eta, xi);
        REQUIRE_FALSE(clean.flags.any());
        CHECK(clean.contact_order == 3);
        CHECK(s.b.evaluate(clean.beta->coords()).is_zero());

        // a linear form through eta, nonzero at xi
        Poly h(f, s.b.frame());
        h += Poly::variable(f, s.b.frame(), 0) * (-s.eta[1]) + Poly::variable(f, s.b.frame(), 1);
        std::size_t k = 1;
        while (h.evaluate(xi.coords()).is_zero()) h += Poly::variable(f, s.b.frame(), ++k) * Scalar::from_int(f, 1);
        const Scalar hx = h.evaluate(xi.coords());

        const Poly on_b = s.b - h.pow(4) * (s.b.evaluate(xi.coords()) / hx.pow(4));
        const ContactReport r1 = contact_analysis(on_b, s.eta, xi);
        CHECK(r1.flags.xi_on_B);
        CHECK(r1.flags.name() == "xi_on_B");
        CHECK_FALSE(r1.beta.has_value());

        const Poly kform = Poly::variable(f, s.b.frame(), 0);
        const Scalar lambda = -*clean.a / (hx.pow(3) * kform.evaluate(s.eta.coords()));
        const ContactReport r2 = contact_analysis(s.b + h.pow(3) * kform * lambda, s.eta, xi);
        CHECK(r2.flags.beta_equals_eta);
        CHECK(r2.contact_order == 4);

        // xi in L0* with eta in L0: the whole line lies on B
        std::vector<Scalar> star(6, Scalar(f));
        star[1] = Scalar::from_int(f, 5);
        star[2] = Scalar::from_int(f, 7);
        const ContactReport r3 = contact_analysis(s.b, s.eta, ProjPoint(star));
        CHECK(r3.flags.line_in_B);
        CHECK_FALSE(r3.restricted.has_value());

        CHECK(code_of([&] { contact_analysis(s.b, s.eta, s.eta); }) == ErrorCode::degenerate_line);
    }
}

TEST_SUITE("point search") {
    TEST_CASE("agrees with exhaustive enumeration over F_7") {
        Rng rng(11);
        const Field f = FieldContext::prime(7);
        int found = 0;
        for (int k = 0; k < 4; ++k) {
            const Setup s = adapted_setup(f, 2, 5, 2, rng);
            const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
            // every point of H0 = P^4(F_7), normalized on its first nonzero coordinate
            std::set<std::vector<std::uint64_t>> valid;
            std::vector<std::uint64_t> v(5, 0);
            for (std::uint64_t code = 1; code < 16807; ++code) {
                std::uint64_t c = code;
                for (auto& x : v) {
                    x = c % 7;
                    c /= 7;
                }
                std::size_t lead = 0;
                while (v[lead] == 0) ++lead;
                if (v[lead] != 1) continue;
                std::vector<Scalar> x{Scalar(f)};
                for (auto a : v) x.push_back(Scalar::from_int(f, static_cast<long long>(a)));
                const bool off_star = !x[3].is_zero() || !x[4].is_zero() || !x[5].is_zero();
                if (dec.in_f_star(x) && off_star && !s.b.evaluate(x).is_zero()) {
                    std::vector<std::uint64_t> key;
                    for (const auto& e : x) key.push_back(e.residue());
                    valid.insert(key);
                }
            }
            for (int m = 0; m < 5; ++m) {
                try {
                    SearchStats st;
                    const ProjPoint xi = find_point_f_eta_star(dec, rng, 200, &st);
                    std::vector<std::uint64_t> key;
                    for (const auto& e : xi.coords()) key.push_back(e.residue());
                    CHECK(valid.count(key) == 1);
                    ++found;
                } catch (const Error& e) {
                    CHECK(e.code() == ErrorCode::sampling_failure);
                    CHECK(valid.empty());
                }
            }
        }
        CHECK(found > 0);
    }

    TEST_CASE("returned points satisfy the contract over F_10007") {
        Rng rng(12);
        const Field f = FieldContext::prime(10007);
        for (int k = 0; k < 6; ++k) {
            const unsigned d = 2 + k % 2;
            const Setup s = adapted_setup(f, d, 2 * d + 2, 2 * d - 2 + k % 3, rng);
            const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
            const ProjPoint xi = find_point_f_eta_star(dec, rng, 64);
            CHECK(dec.in_f_star(xi.coords()));
            CHECK(f_eta(s.b, s.eta).contains(xi.coords()));
            CHECK_FALSE(s.b.evaluate(xi.coords()).is_zero());
            bool off_star = false;
            for (std::size_t i = s.q + 1; i < xi.size(); ++i) off_star = off_star || !xi[i].is_zero();
            CHECK(off_star);
        }
    }

    TEST_CASE("zero trials is an immediate sampling failure") {
        Rng rng(13);
        const Field f = FieldContext::prime(10007);
        const Setup s = adapted_setup(f, 2, 5, 2, rng);
        const PhiDecomposition dec = phi_decomposition(s.b, s.eta, s.q);
        CHECK(code_of([&] { find_point_f_eta_star(dec, rng, 0); }) == ErrorCode::sampling_failure);
    }

    TEST_CASE("search over Q is refused") {
        Rng rng(14);
        const Field f = FieldContext::rationals();
        const Setup s = adapted_setup(f, 2, 5, 2, rng);
        CHECK_THROWS_AS(find_point_f_eta_star(phi_decomposition(s.b, s.eta, s.q), rng, 8), Error);
    }
}

TEST_CASE("resultants vanish at common roots") {
    const Field f = FieldContext::rationals();
    const FramePtr fr = Frame::indexed("X", 2);
    const Poly a = parse_poly("X0^2 - X1", f, fr);
    const Poly b = parse_poly("X0 - X1", f, fr);
    const Poly res = resultant(a, b, 0);
    CHECK(res.coefficient_of(0, 1).is_zero());
    const Poly expect = parse_poly("X1^2 - X1", f, fr);
    CHECK((res == expect || res == expect * Scalar::from_int(f, -1)));
}
