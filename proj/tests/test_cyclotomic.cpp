#include <doctest.h>

#include <cheb/cyclotomic.hpp>

using namespace cheb;

namespace {

CycElem random_integral(const CycCtx& ctx, Lcg64& rng, long lo = -3, long hi = 3) {
    std::vector<Rat> coeffs(ctx->degree());
    for (auto& c : coeffs) c = Rat(static_cast<long>(rng.below(hi - lo + 1)) + lo);
    return CycElem(ctx, std::move(coeffs));
}

}  // namespace

TEST_SUITE("cyclotomic") {
    TEST_CASE("cyclotomic polynomials come out right") {
        CHECK(make_cyclotomic_context(4)->cyclo_poly() == std::vector<Int>{1, 0, 1});
        CHECK(make_cyclotomic_context(3)->cyclo_poly() == std::vector<Int>{1, 1, 1});
        CHECK(make_cyclotomic_context(5)->cyclo_poly() == std::vector<Int>{1, 1, 1, 1, 1});
        CHECK(make_cyclotomic_context(15)->cyclo_poly() ==
              std::vector<Int>{1, -1, 0, 1, -1, 1, 0, -1, 1});
        CHECK(make_cyclotomic_context(15)->degree() == 8);
    }

    TEST_CASE("root powers reduce canonically") {
        auto c4 = make_cyclotomic_context(4);
        CHECK(CycElem::root_power(c4, 2).coeffs() == std::vector<Rat>{Rat(-1), Rat(0)});
        auto c3 = make_cyclotomic_context(3);
        CHECK(CycElem::root_power(c3, 2).coeffs() == std::vector<Rat>{Rat(-1), Rat(-1)});
        auto c15 = make_cyclotomic_context(15);
        CHECK(CycElem::root_power(c15, 15) == CycElem::one(c15));
        CHECK(CycElem::root_power(c15, -1) == CycElem::root_power(c15, 14));
    }

    TEST_CASE("power map is multiplicative") {
        auto ctx = make_cyclotomic_context(12);
        for (long k = 0; k < 12; ++k)
            for (long l = 0; l < 12; ++l)
                CHECK(CycElem::root_power(ctx, k) * CycElem::root_power(ctx, l) ==
                      CycElem::root_power(ctx, k + l));
    }

    TEST_CASE("arithmetic identities") {
        auto c3 = make_cyclotomic_context(3);
        CycElem z = CycElem::root_power(c3, 1);
        CHECK((CycElem::one(c3) + z) * (CycElem::one(c3) + z * z) == CycElem::one(c3));

        auto c5 = make_cyclotomic_context(5);
        CycElem prod = CycElem::one(c5);
        for (long i = 1; i <= 4; ++i)
            prod = prod * (CycElem::one(c5) - CycElem::root_power(c5, i));
        CHECK(prod == CycElem::scalar(c5, 5));  // Phi_5(1) = 5

        Lcg64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            CycElem a = random_integral(c5, rng);
            CHECK((a + (-a)).is_zero());
        }
    }

    TEST_CASE("ring axioms hold exactly on random triples") {
        auto ctx = make_cyclotomic_context(12);
        Lcg64 rng(42);
        for (int trial = 0; trial < 60; ++trial) {
            CycElem a = random_integral(ctx, rng);
            CycElem b = random_integral(ctx, rng);
            CycElem c = random_integral(ctx, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
    }

    TEST_CASE("inverses") {
        auto c3 = make_cyclotomic_context(3);
        CycElem z = CycElem::root_power(c3, 1);
        CHECK(z.inverse() == CycElem::root_power(c3, 2));
        CHECK((CycElem::one(c3) + z).inverse() == -z);
        CHECK(CycElem::scalar(c3, 2).inverse() == CycElem::scalar(c3, Rat(1, 2)));
        CHECK_THROWS_AS(CycElem::zero(c3).inverse(), std::domain_error);

        auto ctx = make_cyclotomic_context(15);
        Lcg64 rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            CycElem a = random_integral(ctx, rng);
            if (a.is_zero()) continue;
            CHECK(a * a.inverse() == CycElem::one(ctx));
        }
    }

    TEST_CASE("norms reproduce the quoted prime-power values") {
        auto c15 = make_cyclotomic_context(15);
        CHECK(cyc_norm(CycElem::one(c15) - CycElem::root_power(c15, 3)) == Rat(25));
        CHECK(cyc_norm(CycElem::one(c15) - CycElem::root_power(c15, 5)) == Rat(81));
        auto c5 = make_cyclotomic_context(5);
        CHECK(cyc_norm(CycElem::scalar(c5, 2)) == Rat(16));
        CHECK(cyc_norm(CycElem::one(c5) - CycElem::root_power(c5, 1)) == Rat(5));
        CHECK(cyc_norm(CycElem::zero(c5)) == Rat(0));
    }

    TEST_CASE("norm is multiplicative") {
        auto ctx = make_cyclotomic_context(15);
        Lcg64 rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            CycElem a = random_integral(ctx, rng, -2, 2);
            CycElem b = random_integral(ctx, rng, -2, 2);
            CHECK(cyc_norm(a * b) == cyc_norm(a) * cyc_norm(b));
        }
    }

    TEST_CASE("divisibility") {
        auto c5 = make_cyclotomic_context(5);
        CycElem lambda = CycElem::one(c5) - CycElem::root_power(c5, 1);
        CHECK_FALSE(cyc_divides(lambda, CycElem::scalar(c5, 2)));
        CHECK(cyc_divides(lambda, CycElem::scalar(c5, 5)));
        Lcg64 rng(3);
        for (int trial = 0; trial < 20; ++trial)
            CHECK(cyc_divides(CycElem::one(c5), random_integral(c5, rng)));
        CHECK_THROWS_AS(cyc_divides(CycElem::zero(c5), CycElem::one(c5)), std::domain_error);
    }

    TEST_CASE("valuation at 1 - zeta_p") {
        auto c5 = make_cyclotomic_context(5);
        CHECK(cyc_valuation(CycElem::scalar(c5, 5), 5) == 4);
        CycElem lambda = CycElem::one(c5) - CycElem::root_power(c5, 1);
        CHECK(cyc_valuation(lambda, 5) == 1);
        auto c15 = make_cyclotomic_context(15);
        CHECK(cyc_valuation(CycElem::root_power(c15, 1), 5) == 0);
        CHECK_THROWS_AS(cyc_valuation(CycElem::zero(c5), 5), std::domain_error);
    }

    TEST_CASE("valuation is additive on products") {
        auto ctx = make_cyclotomic_context(15);
        Lcg64 rng(17);
        int done = 0;
        while (done < 25) {
            CycElem a = random_integral(ctx, rng, -2, 2);
            CycElem b = random_integral(ctx, rng, -2, 2);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(cyc_valuation(a * b, 5) == cyc_valuation(a, 5) + cyc_valuation(b, 5));
            ++done;
        }
    }

    TEST_CASE("quotient_is_field matches the order criterion") {
        CHECK(quotient_is_field(5, 1));
        CHECK(quotient_is_field(5, 2));
        CHECK(quotient_is_field(5, 3));        // ord_3(5) = 2 = phi(3)
        CHECK(quotient_is_field(3, 5));        // ord_5(3) = 4 = phi(5)
        CHECK_FALSE(quotient_is_field(7, 3));  // ord_3(7) = 1
        CHECK_FALSE(quotient_is_field(11, 5)); // ord_5(11) = 1
    }

    TEST_CASE("reduction hom: n = 10 sends zeta to -1 in F_5") {
        auto ctx = make_cyclotomic_context(10);
        ReductionHom hom(ctx, 5);
        CHECK(hom.target()->characteristic() == 5);
        CHECK(hom.target()->degree() == 1);
        FFElem image = hom(CycElem::root_power(ctx, 1));
        CHECK(image.coeffs() == std::vector<u64>{4});
        CHECK(hom(CycElem::zero(ctx)).is_zero());
        CHECK(hom(CycElem::one(ctx)) == FFElem::one(hom.target()));
    }

    TEST_CASE("reduction hom: n = 15 targets F_25 with zeta_5 -> 1, zeta_3 -> ybar") {
        auto ctx = make_cyclotomic_context(15);
        ReductionHom hom(ctx, 5);
        CHECK(hom.target()->element_count() == Int(25));
        CHECK(hom.target()->modulus() == std::vector<u64>{1, 1, 1});  // y^2 + y + 1
        CHECK(hom(CycElem::root_power(ctx, 3)) == FFElem::one(hom.target()));
        FFElem ybar = ff_primitive_rth_root(hom.target());
        CHECK(hom(CycElem::root_power(ctx, 5)) == ybar);
        CHECK(ybar.pow(3) == FFElem::one(hom.target()));
        CHECK(ybar != FFElem::one(hom.target()));
    }

    TEST_CASE("reduction hom requires p primitive modulo m") {
        auto ctx = make_cyclotomic_context(21);
        CHECK_THROWS_AS(ReductionHom(ctx, 7), std::domain_error);  // ord_3(7) = 1
        CHECK_THROWS_AS(ReductionHom(make_cyclotomic_context(10), 2), std::invalid_argument);
    }

    TEST_CASE("reduction hom is a ring homomorphism; kernel contains 1 - zeta_p") {
        for (auto [n, p] : {std::pair<unsigned, unsigned>{15, 5}, {15, 3}, {10, 5}}) {
            auto ctx = make_cyclotomic_context(n);
            ReductionHom hom(ctx, p);
            CHECK(hom(CycElem::one(ctx) - CycElem::root_power(ctx, n / p)).is_zero());
            unsigned m = n / p;
            FFElem zm = hom(CycElem::root_power(ctx, p));
            CHECK(zm.pow(m) == FFElem::one(hom.target()));
            for (unsigned d = 1; d < m; ++d)
                if (m % d == 0) CHECK(zm.pow(d) != FFElem::one(hom.target()));
            Lcg64 rng(n * 100 + p);
            for (int trial = 0; trial < 50; ++trial) {
                CycElem a = random_integral(ctx, rng);
                CycElem b = random_integral(ctx, rng);
                CHECK(hom(a + b) == hom(a) + hom(b));
                CHECK(hom(a * b) == hom(a) * hom(b));
            }
        }
    }

    TEST_CASE("divisibility by 1 - zeta_p vanishes in the quotient") {
        auto ctx = make_cyclotomic_context(15);
        ReductionHom hom(ctx, 5);
        CycElem lambda = CycElem::one(ctx) - CycElem::root_power(ctx, 3);
        Lcg64 rng(23);
        for (int trial = 0; trial < 30; ++trial) {
            CycElem a = random_integral(ctx, rng);
            if (cyc_divides(lambda, a)) CHECK(hom(a).is_zero());
            if (!hom(a).is_zero()) CHECK_FALSE(cyc_divides(lambda, a));
        }
    }

    TEST_CASE("conjugation is the zeta -> zeta^{-1} automorphism") {
        auto ctx = make_cyclotomic_context(12);
        Lcg64 rng(9);
        for (int trial = 0; trial < 30; ++trial) {
            CycElem a = random_integral(ctx, rng);
            CycElem b = random_integral(ctx, rng);
            CHECK(cyc_conj(a * b) == cyc_conj(a) * cyc_conj(b));
            CHECK(cyc_conj(cyc_conj(a)) == a);
        }
        CHECK(cyc_conj(CycElem::root_power(ctx, 5)) == CycElem::root_power(ctx, 7));
    }

    TEST_CASE("element grammar round-trips") {
        auto ctx = make_cyclotomic_context(15);
        CHECK(parse_cyc(ctx, "1 - z^3") == CycElem::one(ctx) - CycElem::root_power(ctx, 3));
        CHECK(parse_cyc(ctx, "-z") == -CycElem::root_power(ctx, 1));
        CHECK(parse_cyc(ctx, "0") == CycElem::zero(ctx));
        CHECK(parse_cyc(ctx, "2*z^2 + 3") ==
              CycElem::scalar(ctx, 2) * CycElem::root_power(ctx, 2) + CycElem::scalar(ctx, 3));
        CHECK(parse_cyc(ctx, "z^20") == CycElem::root_power(ctx, 20));
        CHECK_THROWS_AS(parse_cyc(ctx, "q + 1"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cyc(ctx, ""), std::invalid_argument);

        Lcg64 rng(31);
        for (int trial = 0; trial < 40; ++trial) {
            CycElem a = random_integral(ctx, rng, -5, 5);
            CHECK(parse_cyc(ctx, to_string(a)) == a);
        }
    }

    TEST_CASE("context mismatch is rejected") {
        auto a = CycElem::one(make_cyclotomic_context(4));
        auto b = CycElem::one(make_cyclotomic_context(5));
        CHECK_THROWS_AS(a + b, std::invalid_argument);
    }
}
