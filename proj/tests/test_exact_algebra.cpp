#include <doctest.h>

#include "oracles.hpp"
#include "polarcover/errors.hpp"
#include "polarcover/poly_text.hpp"
#include "polarcover/uniroot.hpp"

using namespace polarcover;

namespace {

Field q_field() { return FieldContext::rationals(); }
Scalar qs(long long v) { return Scalar::from_int(q_field(), v); }

Poly random_poly(const Field& f, const FramePtr& frame, unsigned max_deg, unsigned terms, Rng& rng) {
    Poly g(f, frame);
    for (unsigned k = 0; k < terms; ++k) {
        Exponent e(frame->size(), 0);
        const unsigned deg = static_cast<unsigned>(rng.below(max_deg + 1));
        for (unsigned u = 0; u < deg; ++u) ++e[rng.below(frame->size())];
        Scalar c = random_nonzero_scalar(f, rng, 30);
        if (f->is_rationals() && rng.below(3) == 0) c /= Scalar::from_int(f, static_cast<long long>(rng.below(7) + 2));
        g.add_term(e, c);
    }
    return g;
}

}  // namespace

TEST_SUITE("fields") {
    TEST_CASE("rational scalars are canonical") {
        const Field f = q_field();
        Scalar a = Scalar::from_mpq(f, mpq_class(6, -4));
        CHECK(a.to_string() == "-3/2");
        CHECK(a.rational().get_den() == 2);
        CHECK((a * Scalar::from_int(f, -2)).to_string() == "3");
        CHECK((a + a.inverse() * qs(3) / qs(-2)).to_string() == "-1/2");
        CHECK_THROWS_AS(Scalar(f).inverse(), Error);
    }

    TEST_CASE("prime scalars reduce into [0, p)") {
        const Field f = FieldContext::prime(7);
        CHECK(Scalar::from_int(f, -1).residue() == 6);
        CHECK(Scalar::from_mpq(f, mpq_class(1, 3)).residue() == 5);
        for (long long a = 1; a < 7; ++a) CHECK((Scalar::from_int(f, a) * Scalar::from_int(f, a).inverse()).is_one());
        CHECK(Scalar::from_int(f, 3).pow(6).is_one());
        CHECK_THROWS_AS(Scalar::from_mpq(f, mpq_class(1, 7)), Error);
    }

    TEST_CASE("prime contexts reject composites and even moduli") {
        CHECK_THROWS_AS(FieldContext::prime(9), Error);
        CHECK_THROWS_AS(FieldContext::prime(2), Error);
        CHECK_NOTHROW(FieldContext::prime(10007));
        CHECK(is_prime_u64(1000000007ULL));
        CHECK_FALSE(is_prime_u64(1000000007ULL * 3));
    }

    TEST_CASE("mixing fields is a usage error") {
        CHECK_THROWS_AS(Scalar::from_int(FieldContext::prime(7), 1) + Scalar::from_int(FieldContext::prime(11), 1), Error);
        CHECK(same_field(FieldContext::prime(7), FieldContext::prime(7)));
    }

    TEST_CASE("function field arithmetic") {
        const Field f = FieldContext::function_field(q_field(), {"a", "b"});
        const Scalar a = Scalar::symbol(f, 0), b = Scalar::symbol(f, 1);
        const Scalar one = Scalar::from_int(f, 1);
        Scalar x = (a * a - b * b) / (a - b);
        CHECK(x == a + b);
        CHECK(((a / b) * (b / a)).is_one());
        CHECK((a / b + one) == (a + b) / b);
        CHECK((one / (a + b) - one / (a + b)).is_zero());
        CHECK_THROWS_AS(FieldContext::function_field(q_field(), {"a", "a"}), Error);
        CHECK_THROWS_AS(Scalar::symbol(f, 2), Error);
    }
}

TEST_SUITE("poly arithmetic") {
    TEST_CASE("difference of squares") {
        const Field f = q_field();
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly x0 = Poly::variable(f, fr, 0), x1 = Poly::variable(f, fr, 1);
        const Poly prod = (x0 + x1) * (x0 - x1);
        CHECK(to_text(prod) == "X0^2 - X1^2");
        CHECK(prod.homogeneous_flag() == 2u);
    }

    TEST_CASE("additive inverse is the empty polynomial") {
        Rng rng(3);
        const Poly a = random_poly(q_field(), Frame::indexed("X", 3), 4, 8, rng);
        const Poly z = a + a * qs(-1);
        CHECK(z.is_zero());
        CHECK(z.terms().empty());
    }

    TEST_CASE("products match a naive convolution over F_10007") {
        const Field f = FieldContext::prime(10007);
        const FramePtr fr = Frame::indexed("X", 4);
        Rng rng(11);
        for (int k = 0; k < 20; ++k) {
            const Poly a = oracle::random_form(f, fr, 6, 20, rng);
            const Poly b = oracle::random_form(f, fr, 6, 20, rng);
            const auto expect = oracle::convolve(a, b, 10007);
            const Poly prod = a * b;
            REQUIRE(prod.term_count() == expect.size());
            for (const auto& [e, c] : prod.terms()) CHECK(expect.at(e) == c.residue());
            CHECK(prod.homogeneous_flag() == 12u);
        }
    }

    TEST_CASE("frame and field mismatches are usage errors") {
        const Field f = q_field();
        const Poly a = Poly::variable(f, Frame::indexed("X", 2), 0);
        const Poly b = Poly::variable(f, Frame::indexed("Y", 2), 0);
        CHECK_THROWS_AS(a + b, Error);
        const Poly c = Poly::variable(FieldContext::prime(7), Frame::indexed("X", 2), 0);
        CHECK_THROWS_AS(a * c, Error);
    }

    TEST_CASE("homogeneity flags propagate") {
        const Field f = q_field();
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly x0 = Poly::variable(f, fr, 0);
        const Poly x1 = Poly::variable(f, fr, 1);
        CHECK((x0 * x1 + x0 * x0).homogeneous_flag() == 2u);
        CHECK_FALSE((x0 * x1 + x0).homogeneous_flag().has_value());
        Poly g = x0 + x1;
        CHECK_THROWS_AS((g * x0 + x1).mark_homogeneous(), Error);
    }

    TEST_CASE("ring axioms on random samples") {
        Rng rng(5);
        for (const Field& f : {q_field(), FieldContext::prime(10007)}) {
            const FramePtr fr = Frame::indexed("X", 3);
            for (int k = 0; k < 15; ++k) {
                const Poly a = random_poly(f, fr, 3, 5, rng);
                const Poly b = random_poly(f, fr, 3, 5, rng);
                const Poly c = random_poly(f, fr, 3, 5, rng);
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a * b == b * a);
                CHECK(a + b == b + a);
            }
        }
    }
}

TEST_SUITE("derivatives and substitution") {
    TEST_CASE("power rule") {
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly g = parse_poly("X0^2*X1", q_field(), fr);
        CHECK(to_text(g.derivative(0)) == "2*X0*X1");
        CHECK(Poly::constant(q_field(), fr, qs(5)).derivative(1).is_zero());
    }

    TEST_CASE("Euler identity on random forms") {
        Rng rng(8);
        const FramePtr fr = Frame::indexed("X", 4);
        for (unsigned n = 1; n <= 6; ++n) {
            const Poly g = oracle::random_form(q_field(), fr, n, 10, rng);
            Poly euler(q_field(), fr);
            for (std::size_t i = 0; i < 4; ++i) euler += Poly::variable(q_field(), fr, i) * g.derivative(i);
            CHECK(euler == g * qs(n));
        }
    }

    TEST_CASE("identity substitution and a shear") {
        const Field f = q_field();
        const FramePtr fr = Frame::make({"Z0", "Z1"});
        const Poly g = parse_poly("Z0*Z1", f, fr);
        std::vector<Poly> id{Poly::variable(f, fr, 0), Poly::variable(f, fr, 1)};
        CHECK(g.substitute(id) == g);
        const Scalar eta1 = qs(3);
        std::vector<Poly> shear{Poly::variable(f, fr, 0), Poly::variable(f, fr, 1) - Poly::variable(f, fr, 0) * eta1};
        CHECK(to_text(g.substitute(shear)) == "-3*Z0^2 + Z0*Z1");
    }

    TEST_CASE("substitution is functorial") {
        Rng rng(21);
        const Field f = FieldContext::prime(10007);
        const FramePtr fr = Frame::indexed("X", 3);
        for (int k = 0; k < 10; ++k) {
            const Poly a = oracle::random_form(f, fr, 3, 6, rng);
            std::vector<Poly> s, t;
            for (int i = 0; i < 3; ++i) s.push_back(oracle::random_form(f, fr, 1, 3, rng));
            for (int i = 0; i < 3; ++i) t.push_back(oracle::random_form(f, fr, 2, 3, rng));
            std::vector<Poly> ts;
            for (const auto& si : s) ts.push_back(si.substitute(t));
            CHECK(a.substitute(s).substitute(t) == a.substitute(ts));
        }
    }

    TEST_CASE("exact division") {
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly a = parse_poly("X0^2 - X1^2", q_field(), fr);
        const Poly b = parse_poly("X0 + X1", q_field(), fr);
        CHECK(to_text(a.divide_exact(b)) == "X0 - X1");
        CHECK_THROWS_AS(a.divide_exact(parse_poly("X0 + 2*X1", q_field(), fr)), Error);
    }
}

TEST_SUITE("univariate roots") {
    const FramePtr tf = Frame::make({"t"});

    TEST_CASE("order and residual of t^4 - t^3") {
        const UniRootData u = uni_root_data(parse_poly("t^4 - t^3", q_field(), tf));
        CHECK(u.order_at_zero == 3);
        CHECK(to_text(u.residual) == "t - 1");
        REQUIRE(u.roots.size() == 1);
        CHECK(u.roots[0].root.is_one());
        CHECK(u.roots[0].multiplicity == 1);
    }

    TEST_CASE("monomial t^3") {
        const UniRootData u = uni_root_data(parse_poly("t^3", q_field(), tf));
        CHECK(u.order_at_zero == 3);
        CHECK(to_text(u.residual) == "1");
        CHECK(u.roots.empty());
    }

    TEST_CASE("t^2 - 1 over F_7 against an exhaustive scan") {
        const Field f = FieldContext::prime(7);
        const Poly a = parse_poly("t^2 - 1", f, tf);
        std::vector<std::uint64_t> scan;
        for (long long x = 0; x < 7; ++x) {
            const Scalar pt[1] = {Scalar::from_int(f, x)};
            if (a.evaluate(pt).is_zero()) scan.push_back(static_cast<std::uint64_t>(x));
        }
        const UniRootData u = uni_root_data(a);
        REQUIRE(u.roots.size() == scan.size());
        for (std::size_t i = 0; i < scan.size(); ++i) {
            CHECK(u.roots[i].root.residue() == scan[i]);
            CHECK(u.roots[i].multiplicity == 1);
        }
    }

    TEST_CASE("zero polynomial signals identically zero") {
        try {
            uni_root_data(Poly(q_field(), tf));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::identically_zero);
        }
    }

    TEST_CASE("roots with multiplicity over Q and F_p; reconstruction") {
        const Poly a = parse_poly("t^6 - 3*t^5 + 3*t^4 - t^3", q_field(), tf);  // t^3 (t-1)^3
        const UniRootData u = uni_root_data(a);
        CHECK(u.order_at_zero == 3);
        REQUIRE(u.roots.size() == 1);
        CHECK(u.roots[0].multiplicity == 3);
        const Poly t = Poly::variable(q_field(), tf, 0);
        CHECK(t.pow(u.order_at_zero) * u.residual == a);

        Rng rng(4);
        const Field f = FieldContext::prime(10007);
        for (int k = 0; k < 30; ++k) {
            std::vector<Scalar> c = oracle::random_vector(f, 7, rng, 0);
            const Poly g = univariate(f, tf, c);
            if (g.is_zero()) continue;
            const UniRootData ug = uni_root_data(g);
            CHECK(Poly::variable(f, tf, 0).pow(ug.order_at_zero) * ug.residual == g);
            for (const auto& rm : ug.roots) {
                const Scalar pt[1] = {rm.root};
                CHECK(g.evaluate(pt).is_zero());
            }
        }
    }

    TEST_CASE("roots_mod_p finds all roots of a split product") {
        const std::uint64_t p = 10007;
        std::vector<std::uint64_t> f{1};
        for (std::uint64_t r : {5ULL, 17ULL, 9000ULL, 17ULL}) {
            std::vector<std::uint64_t> next(f.size() + 1, 0);
            for (std::size_t i = 0; i < f.size(); ++i) {
                next[i + 1] = (next[i + 1] + f[i]) % p;
                next[i] = (next[i] + oracle::mulm(f[i], p - r, p)) % p;
            }
            f = next;
        }
        CHECK(roots_mod_p(f, p) == std::vector<std::uint64_t>{5, 17, 9000});
    }
}

TEST_SUITE("text format") {
    TEST_CASE("round trip of the reference polynomial") {
        const FramePtr fr = Frame::make({"Z0", "Z1", "Y5"});
        const std::string text = "3/2*Z0^2*Y5 - Z1*Y5^2";
        const Poly p = parse_poly(text, q_field(), fr);
        CHECK(to_text(p) == text);
        CHECK(parse_poly(to_text(p), q_field(), fr) == p);
    }

    TEST_CASE("zero prints as 0") {
        const FramePtr fr = Frame::indexed("X", 2);
        CHECK(to_text(Poly(q_field(), fr)) == "0");
        CHECK(parse_poly("0", q_field(), fr).is_zero());
    }

    TEST_CASE("documents carry the frame") {
        const Poly p = parse_poly("Z0*Y2 - 1/3*Y2^2", q_field(), Frame::make({"Z0", "Z1", "Y2"}));
        const std::string doc = to_document(p);
        CHECK(doc == "vars: Z0,Z1,Y2\nZ0*Y2 - 1/3*Y2^2\n");
        const Poly back = parse_document(doc, q_field());
        CHECK(to_text(back) == to_text(p));
        CHECK(back.frame()->names() == p.frame()->names());
    }

    TEST_CASE("parse errors carry offsets") {
        const FramePtr fr = Frame::indexed("X", 2);
        try {
            parse_poly("X0 + X7", q_field(), fr);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 5);
        }
        CHECK_THROWS_AS(parse_poly("X0 +", q_field(), fr), ParseError);
        CHECK_THROWS_AS(parse_poly("X0 ** X1", q_field(), fr), ParseError);
        CHECK_THROWS_AS(parse_poly("1/0*X0", q_field(), fr), ParseError);
        CHECK_THROWS_AS(parse_document("X0\n", q_field()), ParseError);
    }

    TEST_CASE("function-field coefficients round trip") {
        const Field f = FieldContext::function_field(q_field(), {"b0", "b1"});
        const FramePtr fr = Frame::indexed("X", 2);
        const Poly p = Poly::variable(f, fr, 0) * (Scalar::symbol(f, 0) / (Scalar::symbol(f, 1) + Scalar::from_int(f, 2))) +
                       Poly::variable(f, fr, 1) * Scalar::symbol(f, 1);
        const std::string text = to_text(p);
        CHECK(parse_poly(text, f, fr) == p);
        CHECK(to_text(parse_poly(text, f, fr)) == text);
    }

    TEST_CASE("fuzz corpus of 1000 polynomials round trips byte-identically") {
        Rng rng(2024);
        const FramePtr fr = Frame::make({"Z0", "Z1", "Z2", "Y3", "Y4"});
        for (int k = 0; k < 1000; ++k) {
            const Field f = k % 2 ? q_field() : FieldContext::prime(10007);
            const Poly p = random_poly(f, fr, 5, static_cast<unsigned>(rng.below(9)), rng);
            const std::string text = to_text(p);
            const Poly back = parse_poly(text, f, fr);
            REQUIRE(back == p);
            REQUIRE(to_text(back) == text);
        }
    }
}
