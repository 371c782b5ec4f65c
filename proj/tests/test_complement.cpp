#include <doctest.h>

#include <cheb/complement.hpp>
#include <cheb/combinatorics.hpp>
#include <cheb/minor_verifier.hpp>

using namespace cheb;

namespace {

std::vector<unsigned> random_proper_subset(unsigned n, Lcg64& rng) {
    unsigned k = 1 + static_cast<unsigned>(rng.below(n - 1));
    std::vector<unsigned> pool(n);
    for (unsigned i = 0; i < n; ++i) pool[i] = i;
    for (unsigned i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

TEST_SUITE("complement") {
    TEST_CASE("jacobi identity, n=2 hand computation") {
        auto ctx = make_cyclotomic_context(2);
        JacobiCheck check = jacobi_check(ctx, {0}, {0});
        CHECK(check.lhs == CycElem::one(ctx));
        CHECK(check.rhs == CycElem::one(ctx));
        CHECK(check.equal);
    }

    TEST_CASE("jacobi identity on singletons of n=3") {
        auto ctx = make_cyclotomic_context(3);
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) {
                JacobiCheck check = jacobi_check(ctx, {i}, {j});
                CHECK(check.equal);
            }
    }

    TEST_CASE("jacobi with a vanishing minor: both sides are zero") {
        auto ctx = make_cyclotomic_context(4);
        JacobiCheck check = jacobi_check(ctx, {0, 2}, {0, 2});
        CHECK(check.lhs.is_zero());
        CHECK(check.rhs.is_zero());
        CHECK(check.equal);
    }

    TEST_CASE("jacobi equality on seeded random pairs up to n = 12") {
        Lcg64 rng(7);
        for (int trial = 0; trial < 60; ++trial) {
            unsigned n = 2 + static_cast<unsigned>(rng.below(11));
            auto ctx = make_cyclotomic_context(n);
            auto I = random_proper_subset(n, rng);
            std::vector<unsigned> J;
            do {
                J = random_proper_subset(n, rng);
            } while (J.size() != I.size());
            JacobiCheck check = jacobi_check(ctx, I, J);
            CHECK(check.equal);
        }
    }

    TEST_CASE("degenerate index sets are rejected") {
        auto ctx = make_cyclotomic_context(5);
        std::vector<unsigned> full{0, 1, 2, 3, 4};
        CHECK_THROWS_AS(jacobi_check(ctx, {}, {}), std::invalid_argument);
        CHECK_THROWS_AS(jacobi_check(ctx, full, full), std::invalid_argument);
        CHECK_THROWS_AS(complement_duality(ctx, {0, 1}, {0}), std::invalid_argument);
    }

    TEST_CASE("duality at the n=4 counterexample: both minors singular") {
        auto ctx = make_cyclotomic_context(4);
        DualityCheck check = complement_duality(ctx, {0, 2}, {0, 2});
        CHECK_FALSE(check.det_IJ_nonzero);
        CHECK_FALSE(check.det_IcJc_nonzero);  // complement {1,3} is singular too
        CHECK(check.consistent);
        CHECK(check.formula_ok);
    }

    TEST_CASE("duality across all principal subsets of n = 4 and n = 6") {
        for (unsigned n : {4u, 6u}) {
            auto ctx = make_cyclotomic_context(n);
            std::vector<unsigned> I{0};
            do {
                if (I.size() < n) {
                    DualityCheck check = complement_duality(ctx, I, I);
                    CHECK(check.consistent);
                    CHECK(check.formula_ok);
                    if (n == 6) CHECK(check.det_IJ_nonzero);  // all principal minors nonsingular at n = 6
                }
            } while (next_subset_lex(I, n));
        }
    }

    TEST_CASE("singleton versus full-minus-one: 1x1 minors are roots of unity") {
        auto ctx = make_cyclotomic_context(6);
        std::vector<unsigned> big{0, 1, 2, 3, 4};  // complement {5}
        DualityCheck check = complement_duality(ctx, big, big);
        CHECK(check.det_IJ_nonzero);
        CHECK(check.det_IcJc_nonzero);
        CHECK(check.consistent);
    }

    TEST_CASE("conjugation commutes with determinants") {
        Lcg64 rng(11);
        for (int trial = 0; trial < 25; ++trial) {
            unsigned n = 3 + static_cast<unsigned>(rng.below(8));
            auto ctx = make_cyclotomic_context(n);
            unsigned k = 1 + static_cast<unsigned>(rng.below(3));
            Matrix<CycElem> M(k, k, CycElem::zero(ctx));
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) {
                    std::vector<Rat> c(ctx->degree());
                    for (auto& v : c) v = Rat(static_cast<long>(rng.below(5)) - 2);
                    M.at(i, j) = CycElem(ctx, std::move(c));
                }
            Matrix<CycElem> Mc(k, k, CycElem::zero(ctx));
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) Mc.at(i, j) = cyc_conj(M.at(i, j));
            CHECK(det_berkowitz(Mc) == cyc_conj(det_berkowitz(M)));
        }
    }

    TEST_CASE("A times its conjugate transpose is n times the identity (n <= 10)") {
        for (unsigned n = 2; n <= 10; ++n) {
            auto ctx = make_cyclotomic_context(n);
            Matrix<CycElem> A = dft_matrix(ctx);
            Matrix<CycElem> P = mat_mul(A, conj_transpose(A));
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) {
                    if (i == j)
                        CHECK(P.at(i, j) == CycElem::scalar(ctx, static_cast<long>(n)));
                    else
                        CHECK(P.at(i, j).is_zero());
                }
        }
    }

    TEST_CASE("campaign post-pass: principal singularity matches complement singularity") {
        for (unsigned n : {4u, 6u}) {
            CampaignSpec spec;
            spec.n = n;
            spec.mode = CampaignMode::principal;
            spec.max_size = n - 1;  // proper subsets only
            CampaignReport report = run_campaign(spec);
            std::vector<std::vector<unsigned>> singular_sets;
            for (const auto& f : report.singular_findings) singular_sets.push_back(f.I);
            auto is_singular = [&](const std::vector<unsigned>& S) {
                return std::find(singular_sets.begin(), singular_sets.end(), S) !=
                       singular_sets.end();
            };
            std::vector<unsigned> I{0};
            do {
                if (I.size() >= n) continue;
                CHECK(is_singular(I) == is_singular(complement_of(n, I)));
            } while (next_subset_lex(I, n));
            // the campaign's verdicts agree with direct exact recomputation
            auto ctx = make_cyclotomic_context(n);
            SubmatrixCertifier certifier(ctx, false);
            for (const auto& S : singular_sets) CHECK(certifier.det_exact(S, S).is_zero());
        }
    }
}
