#include <doctest.h>

#include <cheb/finite_field.hpp>

using namespace cheb;

namespace {

FFElem random_elem(const FFPtr& f, Lcg64& rng) {
    std::vector<u64> c(f->degree());
    for (auto& v : c) v = rng.below(f->characteristic());
    return FFElem(f, std::move(c));
}

FFElem random_nonzero(const FFPtr& f, Lcg64& rng) {
    while (true) {
        FFElem e = random_elem(f, rng);
        if (!e.is_zero()) return e;
    }
}

}  // namespace

TEST_SUITE("finite_field") {
    TEST_CASE("F_25 = F_5[y]/(y^2+y+1): modulus has no root mod 5") {
        // oracle: brute force over the 5 residues
        for (u64 a = 0; a < 5; ++a) CHECK((a * a + a + 1) % 5 != 0);
        FFPtr f = build_quotient_field(5, 3);
        CHECK(f->characteristic() == 5);
        CHECK(f->degree() == 2);
        CHECK(f->modulus() == std::vector<u64>{1, 1, 1});
        CHECK(f->element_count() == Int(25));
    }

    TEST_CASE("F_81 = F_3[y]/Phi_5: order of 3 mod 5 is 4") {
        CHECK(mult_order(3, 5) == 4);
        FFPtr f = build_quotient_field(3, 5);
        CHECK(f->degree() == 4);
        CHECK(f->element_count() == Int(81));
        FFElem ybar = ff_primitive_rth_root(f);
        CHECK(ybar.pow(5) == FFElem::one(f));
        CHECK(ybar != FFElem::one(f));
    }

    TEST_CASE("(p=7, r=3) is rejected: 7 = 1 (mod 3) has order 1") {
        CHECK_THROWS_AS(build_quotient_field(7, 3), std::domain_error);
        // Phi_3 = y^2+y+1 is genuinely reducible mod 7: y=2 and y=4 are roots
        CHECK((2 * 2 + 2 + 1) % 7 == 0);
        CHECK_THROWS_AS(make_finite_field(7, {1, 1, 1}), std::invalid_argument);
    }

    TEST_CASE("primitive root has exact order r") {
        FFPtr f = build_quotient_field(5, 3);
        FFElem ybar = ff_primitive_rth_root(f);
        CHECK(ybar.pow(3) == FFElem::one(f));
        CHECK(ybar.pow(1) != FFElem::one(f));
        FFPtr f81 = build_quotient_field(3, 5);
        CHECK(ff_primitive_rth_root(f81).pow(5) == FFElem::one(f81));
    }

    TEST_CASE("arithmetic: worked product in F_25") {
        FFPtr f = build_quotient_field(5, 3);
        FFElem y(f, {0, 1});
        FFElem y_plus_1(f, {1, 1});
        // y^2 = -y-1, so y*(y+1) = y^2+y = -1 = 4
        CHECK(y * y_plus_1 == FFElem(f, {4, 0}));
        CHECK(to_string(y * y_plus_1) == "4");
        CHECK(to_string(FFElem(f, {4, 3})) == "3y + 4");
    }

    TEST_CASE("field axioms: inverses, characteristic, group order") {
        Lcg64 rng(77);
        for (auto [p, r] : {std::pair<u64, u64>{5, 3}, {3, 5}, {13, 5}}) {
            FFPtr f = build_quotient_field(p, r);
            FFElem one = FFElem::one(f);
            FFElem sum = FFElem::zero(f);
            for (u64 i = 0; i < p; ++i) sum = sum + one;
            CHECK(sum.is_zero());
            Int order = f->element_count() - 1;
            for (int trial = 0; trial < 25; ++trial) {
                FFElem a = random_nonzero(f, rng);
                CHECK(a * a.inverse() == one);
                CHECK(a.pow(order.get_ui()) == one);
            }
            CHECK_THROWS_AS(FFElem::zero(f).inverse(), std::domain_error);
        }
    }

    TEST_CASE("frenkel: multiplicity of a repeated root stays below the support") {
        FFPtr f5 = build_quotient_field(5, 1);  // plain F_5
        FFElem one = FFElem::one(f5);
        // g = (x-1)^2 = x^2 + 3x + 1 over F_5
        std::vector<FFElem> g{FFElem(f5, {1}), FFElem(f5, {3}), FFElem(f5, {1})};
        FrenkelResult res = frenkel_check(f5, g, one);
        CHECK(res.multiplicity == 2);
        CHECK(res.support == 3);
        CHECK(res.ok);
    }

    TEST_CASE("frenkel: x^3 + 1 at a = -1 over F_5 via synthetic division oracle") {
        FFPtr f5 = build_quotient_field(5, 1);
        std::vector<FFElem> g{FFElem(f5, {1}), FFElem::zero(f5), FFElem::zero(f5), FFElem(f5, {1})};
        FFElem a(f5, {4});
        // oracle: x^3+1 = (x+1)(x^2-x+1); the quadratic at -1 is 1+1+1 = 3 != 0
        CHECK((1 + 1 + 1) % 5 == 3);
        FrenkelResult res = frenkel_check(f5, g, a);
        CHECK(res.multiplicity == 1);
        CHECK(res.support == 2);
        CHECK(res.ok);
    }

    TEST_CASE("frenkel property sweep: 1000 random polynomials over F_25") {
        FFPtr f = build_quotient_field(5, 3);
        Lcg64 rng(2024);
        int checked = 0;
        while (checked < 1000) {
            unsigned deg = static_cast<unsigned>(rng.below(5));  // deg < p = 5
            std::vector<FFElem> g(deg + 1, FFElem::zero(f));
            for (auto& c : g) c = random_elem(f, rng);
            if (g[deg].is_zero()) g[deg] = FFElem::one(f);
            FFElem a = random_nonzero(f, rng);
            FrenkelResult res = frenkel_check(f, g, a);
            CHECK(res.ok);
            ++checked;
        }
    }

    TEST_CASE("frenkel preconditions") {
        FFPtr f5 = build_quotient_field(5, 1);
        std::vector<FFElem> zero{FFElem::zero(f5)};
        CHECK_THROWS_AS(frenkel_check(f5, zero, FFElem::one(f5)), std::invalid_argument);
        std::vector<FFElem> too_big(7, FFElem::one(f5));  // degree 6 >= p = 5
        CHECK_THROWS_AS(frenkel_check(f5, too_big, FFElem::one(f5)), std::invalid_argument);
        std::vector<FFElem> ok{FFElem::one(f5), FFElem::one(f5)};
        CHECK_THROWS_AS(frenkel_check(f5, ok, FFElem::zero(f5)), std::invalid_argument);
    }

    TEST_CASE("construction guards") {
        CHECK_THROWS_AS(make_finite_field(6, {1, 1}), std::invalid_argument);   // 6 not prime
        CHECK_THROWS_AS(make_finite_field(5, {2}), std::invalid_argument);      // degree 0
        CHECK_THROWS_AS(make_finite_field(5, {1, 7}), std::invalid_argument);   // coeff out of range
        CHECK_THROWS_AS(make_finite_field(5, {1, 0, 3, 1}), std::invalid_argument);  // root at y=1
        CHECK_THROWS_AS(build_quotient_field(2, 3), std::invalid_argument);     // p must be odd
    }

    TEST_CASE("build_quotient_field succeeds exactly when the order is r-1") {
        for (u64 r : {3ULL, 5ULL, 7ULL}) {
            for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
                if (p == r) continue;
                bool primitive = mult_order(p, r) == r - 1;
                if (primitive) {
                    CHECK_NOTHROW(build_quotient_field(p, r));
                } else {
                    CHECK_THROWS_AS(build_quotient_field(p, r), std::domain_error);
                }
            }
        }
    }
}
