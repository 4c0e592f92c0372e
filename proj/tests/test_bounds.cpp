#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "polarcover/bounds.hpp"
#include "polarcover/errors.hpp"

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

// Least r > q with (r - q)(q + 1) >= demand, by walking r upward.
mpz_class threshold_by_search(unsigned long q, const std::vector<unsigned>& dbar) {
    mpz_class demand = 0;
    for (unsigned d : dbar) demand += oracle::pascal(d + static_cast<unsigned>(q), static_cast<unsigned>(q));
    mpz_class r = q + 1;
    while ((r - q) * (q + 1) < demand) ++r;
    return r;
}

}  // namespace

TEST_SUITE("multidegree") {
    TEST_CASE("sorted, positive, exclusion predicate") {
        CHECK(MultiDegree({3, 1, 2}).degrees() == std::vector<unsigned>{1, 2, 3});
        CHECK(MultiDegree({1, 1, 2}).is_excluded());
        CHECK(MultiDegree({1, 2}).is_excluded());
        CHECK_FALSE(MultiDegree({2}).is_excluded());
        CHECK_FALSE(MultiDegree({1, 2, 2}).is_excluded());
        CHECK(MultiDegree::staircase(4).degrees() == std::vector<unsigned>{1, 2, 3, 4});
        CHECK(code_of([] { MultiDegree({}); }) == ErrorCode::usage);
        CHECK(code_of([] { MultiDegree({0, 2}); }) == ErrorCode::usage);
    }
}

TEST_SUITE("linear-space criterion") {
    TEST_CASE("cubic surfaces contain lines, plane cubics do not") {
        CHECK(predonzan_ok(3, 1, MultiDegree::single(3)));
        CHECK_FALSE(predonzan_ok(2, 1, MultiDegree::single(3)));
        CHECK(min_r_linear(1, MultiDegree::single(3)) == 3);
        CHECK(min_r_linear(1, MultiDegree::single(2)) == 3);
    }

    TEST_CASE("the excluded multidegree is an error") {
        CHECK(code_of([] { predonzan_ok(10, 1, MultiDegree({1, 1, 2})); }) == ErrorCode::exclusion);
        CHECK(code_of([] { min_r_linear(1, MultiDegree({1, 1, 2})); }) == ErrorCode::exclusion);
        CHECK(code_of([] { predonzan_ok(2, 2, MultiDegree::single(3)); }) == ErrorCode::precondition);
    }

    TEST_CASE("threshold for sextics through a 26-plane") {
        const mpz_class r = min_r_linear(26, MultiDegree::single(6));
        CHECK(r == threshold_by_search(26, {6}));
        CHECK(r == 33589);
        CHECK(predonzan_ok(r, 26, MultiDegree::single(6)));
        CHECK_FALSE(predonzan_ok(r - 1, 26, MultiDegree::single(6)));
    }

    TEST_CASE("threshold is exact and the predicate monotone") {
        Rng rng(17);
        for (int k = 0; k < 60; ++k) {
            const unsigned long q = 1 + rng.below(8);
            std::vector<unsigned> degs;
            const std::size_t m = 1 + rng.below(3);
            for (std::size_t i = 0; i < m; ++i) degs.push_back(2 + static_cast<unsigned>(rng.below(4)));
            const MultiDegree dbar(degs);
            const mpz_class r = min_r_linear(q, dbar);
            CHECK(r == threshold_by_search(q, degs));
            CHECK(predonzan_ok(r, q, dbar));
            if (r - 1 > q) CHECK_FALSE(predonzan_ok(r - 1, q, dbar));
            bool seen = false;
            for (mpz_class s = q + 1; s < r + 10; ++s) {
                const bool ok = predonzan_ok(s, q, dbar);
                CHECK(ok >= seen);
                seen = ok;
            }
        }
    }
}

TEST_SUITE("ledger") {
    TEST_CASE("lines on cubic surfaces") {
        const BoundsLedger l = ledger(3, 1, 0, MultiDegree::single(3));
        CHECK(l.incidence_dim == 19);
        CHECK(l.fano_dim == 0);
        CHECK(l.n_j == std::vector<mpz_class>{19});
        CHECK(l.m_j == std::vector<mpz_class>{15});
        CHECK(l.predonzan_ok);
        CHECK(l.trdeg_identity_ok);
        CHECK_FALSE(l.fano_dim_b.has_value());
    }

    TEST_CASE("sextics in P^8 through a P^4") {
        const BoundsLedger l = ledger(8, 4, 3, MultiDegree::single(6));
        CHECK(l.fano_dim == -190);
        REQUIRE(l.fano_dim_b.has_value());
        CHECK(*l.fano_dim_b == -190);
        CHECK_FALSE(l.predonzan_ok);
        CHECK(l.trdeg_identity_ok);
    }

    TEST_CASE("excluded multidegrees are flagged, not thrown") {
        const BoundsLedger l = ledger(9, 1, 0, MultiDegree({1, 2}));
        CHECK(l.excluded);
        CHECK_FALSE(l.predonzan_ok);
        CHECK(code_of([] { ledger(3, 3, 0, MultiDegree::single(2)); }) == ErrorCode::precondition);
    }

    TEST_CASE("100 random triples against a Pascal-triangle evaluator") {
        Rng rng(99);
        for (int k = 0; k < 100; ++k) {
            const unsigned r = 2 + static_cast<unsigned>(rng.below(30));
            const unsigned q = 1 + static_cast<unsigned>(rng.below(r - 1));
            std::vector<unsigned> degs;
            const std::size_t m = 1 + rng.below(3);
            for (std::size_t i = 0; i < m; ++i) degs.push_back(1 + static_cast<unsigned>(rng.below(7)));
            const MultiDegree dbar(degs);
            const unsigned d = 1 + static_cast<unsigned>(rng.below(4));
            const BoundsLedger l = ledger(r, q, d, dbar);

            mpz_class amb = 0, pl = 0, sum_n = 0;
            for (std::size_t j = 0; j < dbar.size(); ++j) {
                const unsigned dj = dbar.degrees()[j];
                CHECK(l.n_j[j] == oracle::pascal(r + dj, dj) - 1);
                CHECK(l.m_j[j] == oracle::pascal(dj + r, r) - oracle::pascal(dj + q, q) - 1);
                amb += oracle::pascal(r + dj, r);
                pl += oracle::pascal(q + dj, q);
                sum_n += l.n_j[j];
            }
            const mpz_class grass = mpz_class((r - q) * (q + 1));
            CHECK(l.incidence_dim == grass + amb - pl - static_cast<unsigned long>(dbar.size()));
            CHECK(l.fano_dim == grass - pl);
            CHECK(*l.fano_dim_b == grass - oracle::pascal(q + 2 * d, 2 * d));
            CHECK(l.trdeg_identity_ok);
            CHECK(l.predonzan_ok == (!dbar.is_excluded() && grass >= pl));
            if (l.fano_dim >= 0) CHECK(l.incidence_dim - l.fano_dim == sum_n);
        }
    }
}

TEST_SUITE("constants") {
    TEST_CASE("cubic case") {
        const ConstantsLedger c = constants(3, std::nullopt, std::nullopt);
        CHECK(c.n == 4);
        CHECK(c.q_dbar.is_exact());
        CHECK(c.q_dbar.value == 25);
        CHECK(c.rho_dprime.to_string() == "26");
        CHECK(c.rho1.value == threshold_by_search(26, {6}));
        CHECK(c.rho1.is_exact());
        CHECK(c.c_dbar.to_string() == "unknown");
        CHECK(c.rho.kind == BoundedInt::Kind::lower_bound);
        CHECK(c.rho.value == c.rho1.value + 1);
    }

    TEST_CASE("external c") {
        const ConstantsLedger small = constants(3, mpz_class(100), std::nullopt);
        CHECK(small.rho.to_string() == mpz_class(small.rho1.value + 1).get_str());
        const ConstantsLedger large = constants(3, mpz_class(50000), std::nullopt);
        CHECK(large.rho.to_string() == "50001");
    }

    TEST_CASE("quartic case is a bound") {
        const ConstantsLedger c = constants(4, std::nullopt, std::nullopt);
        CHECK(c.n == 6);
        CHECK(c.q_dbar.to_string() == ">=27");
        CHECK(c.rho_dprime.to_string() == ">=28");
        CHECK(c.rho1.kind == BoundedInt::Kind::lower_bound);
        CHECK(c.rho1.value == threshold_by_search(28, {8}));
        const ConstantsLedger ext = constants(4, std::nullopt, mpz_class(40));
        CHECK(ext.q_dbar.to_string() == "40");
        CHECK(ext.rho1.value == threshold_by_search(41, {8}));
    }

    TEST_CASE("invalid inputs") {
        CHECK(code_of([] { constants(2, std::nullopt, std::nullopt); }) == ErrorCode::precondition);
        CHECK(code_of([] { constants(3, std::nullopt, mpz_class(24)); }) == ErrorCode::config);
        CHECK(code_of([] { constants(5, std::nullopt, mpz_class(28)); }) == ErrorCode::config);
    }
}

TEST_SUITE("fiber generation") {
    TEST_CASE("coefficient counts match monomial enumeration") {
        CHECK(fiber_coefficient_count(5, 2, 2) == 15);
        for (unsigned r = 2; r <= 7; ++r)
            for (unsigned q = 1; q < r; ++q)
                for (unsigned d = 1; d <= 4; ++d) {
                    std::size_t with_y = 0;
                    for (const auto& e : monomials_of_degree(r + 1, d)) {
                        unsigned y = 0;
                        for (std::size_t i = q + 1; i <= r; ++i) y += e[i];
                        with_y += y > 0;
                    }
                    CHECK(fiber_coefficient_count(r, q, d) == with_y);
                }
    }

    TEST_CASE("random forms vanish on L0") {
        Rng rng(5);
        const Field f = FieldContext::prime(10007);
        const Subspace l0 = Subspace::coordinate(f, 6, {0, 1, 2});
        const auto forms = gen_fiber_generic(l0, MultiDegree({2, 3}), GenerationMode::seeded_random, &rng);
        REQUIRE(forms.size() == 2);
        for (const auto& g : forms) {
            CHECK(contains_coordinate_plane(g, 2));
            for (int s = 0; s < 10; ++s) {
                std::vector<Scalar> x = oracle::random_vector(f, 7, rng, 10006);
                for (std::size_t i = 3; i < 7; ++i) x[i] = Scalar(f);
                CHECK(g.evaluate(x).is_zero());
            }
        }
        CHECK(forms[0].homogeneous_flag() == 2u);
        CHECK(forms[1].homogeneous_flag() == 3u);
        CHECK(forms[0].term_count() <= fiber_coefficient_count(6, 2, 2));
        CHECK(forms[1].term_count() <= fiber_coefficient_count(6, 2, 3));
    }

    TEST_CASE("transcendental forms use fresh symbols") {
        const Field f = FieldContext::rationals();
        const auto forms = gen_fiber_generic(Subspace::coordinate(f, 5, {0, 1, 2}), MultiDegree::single(2),
                                             GenerationMode::transcendental);
        REQUIRE(forms.size() == 1);
        CHECK(forms[0].term_count() == 15);
        CHECK(forms[0].field()->symbol_count() == 15);
        std::set<std::string> seen;
        for (const auto& [e, c] : forms[0].terms()) seen.insert(c.to_string());
        CHECK(seen.size() == 15);
        CHECK(contains_coordinate_plane(forms[0], 2));
    }

    TEST_CASE("generation requires an adapted frame and a generator") {
        const Field f = FieldContext::prime(10007);
        Rng rng(1);
        CHECK(code_of([&] {
                  gen_fiber_generic(Subspace::coordinate(f, 5, {0, 1, 3}), MultiDegree::single(2),
                                    GenerationMode::seeded_random, &rng);
              }) == ErrorCode::usage);
        CHECK(code_of([&] {
                  gen_fiber_generic(Subspace::coordinate(f, 5, {0, 1, 2}), MultiDegree::single(2),
                                    GenerationMode::seeded_random);
              }) == ErrorCode::usage);
    }

    TEST_CASE("same seed, same forms") {
        const Field f = FieldContext::prime(10007);
        Rng a(42), b(42);
        const Subspace l0 = Subspace::coordinate(f, 6, {0, 1, 2, 3});
        CHECK(gen_fiber_generic(l0, MultiDegree::single(4), GenerationMode::seeded_random, &a) ==
              gen_fiber_generic(l0, MultiDegree::single(4), GenerationMode::seeded_random, &b));
    }
}
