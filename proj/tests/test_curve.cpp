// SPDX-License-Identifier: Apache-2.0

#include "forge/curve.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace forge;

namespace {

const Polynomial kT = Polynomial::of({1, 0, 6});
const Polynomial kR = Polynomial::of({1, 6, 18, 36, 36});
const Polynomial kQ = Polynomial::of({1, 6, 24, 36, 36});

FamilyCandidate quartic_family() { return candidate_from_triple(kT, kR, kQ, 12, 3); }

bool trial_division_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("probabilistic primality agrees with trial division below 10^6") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(42);
    for (unsigned long n = 0; n < 1000000; n += (n < 1000 ? 1 : 997))
        CHECK(is_probable_prime(Int(n), rng) == trial_division_prime(n));
    // strong pseudoprime traps
    CHECK_FALSE(is_probable_prime(Int("3215031751"), rng));
    CHECK(is_probable_prime(Int("2305843009213693951"), rng)); // 2^61 - 1
    CHECK_FALSE(is_probable_prime(Int("2305843009213693953"), rng));
}

TEST_CASE("embedding degree") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(1);
    CHECK(embedding_degree(103, 97, 64, rng) == 12);
    CHECK(embedding_degree(11, 7, 64, rng) == 3);
    CHECK(embedding_degree(8, 7, 64, rng) == 1); // q = 1 mod r
    CHECK(embedding_degree(3, 7, 2, rng) == 0);  // order 6 exceeds the bound
    CHECK_THROWS_AS(embedding_degree(14, 7, 64, rng), std::invalid_argument);
}

TEST_CASE("family evaluation at integer arguments") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(5);
    FamilyCandidate fam = quartic_family();

    EvaluationResult e1 = evaluate_family(fam, 1, rng);
    REQUIRE(e1.accepted);
    CHECK(e1.q == 103);
    CHECK(e1.r == 97);
    CHECK(e1.t == 7);
    CHECK(e1.h == 1);
    CHECK(e1.y == 11);
    CHECK(e1.D == 3);
    CHECK(3 * e1.y * e1.y == 4 * e1.q - e1.t * e1.t);

    EvaluationResult e2 = evaluate_family(fam, 2, rng);
    CHECK_FALSE(e2.accepted); // q(2) = 913 = 11 * 83
    CHECK(e2.reason == "q(x0) composite");

    // sparse triple: y recovered by factoring 4q - t^2
    FamilyCandidate mnt = candidate_from_triple(
        Polynomial::of({-1, 6}), Polynomial::of({1, -6, 12}), Polynomial::of({-1, 0, 12}), 3, 19);
    EvaluationResult m1 = evaluate_family(mnt, 1, rng);
    REQUIRE(m1.accepted);
    CHECK(m1.q == 11);
    CHECK(m1.r == 7);
    CHECK(m1.t == 5);
    CHECK(m1.D == 19);
    CHECK(m1.y == 1);
}

TEST_CASE("curve construction and order certification") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(9);

    SECTION("j = 0 sweep, brute-force verified") {
        auto [A, B] = construct_curve(103, 7, 3, rng);
        CHECK(A == 0);
        CHECK(ec::order_brute(103, A, B) == 97);
    }

    SECTION("j = 1728 sweep") {
        // q = 13, t = 6: 4*13 - 36 = 16 = 1 * 4^2, D = 1, n = 8
        auto [A, B] = construct_curve(13, 6, 1, rng);
        CHECK(B == 0);
        CHECK(ec::order_brute(13, A, B) == 8);
    }

    SECTION("generic small discriminant by exhaustive search") {
        auto [A, B] = construct_curve(11, 5, 19, rng);
        CHECK(ec::order_brute(11, A, B) == 7);
    }

    SECTION("parameter inconsistency is rejected") {
        CHECK_THROWS_AS(construct_curve(103, 7, 1, rng), std::invalid_argument);
    }

    SECTION("point arithmetic sanity") {
        ec::Curve E{103, 0, 5};
        for (int i = 0; i < 10; ++i) {
            ec::Point P = E.random_point(rng);
            CHECK(E.on_curve(P));
            CHECK(E.mul(P, 97).infinity);
            CHECK_FALSE(E.mul(P, 1).infinity); // 97 prime: every point has full order
            ec::Point Q = E.add(P, P);
            CHECK(E.on_curve(Q));
            CHECK(E.add(P, ec::Point{}).x == P.x);
        }
    }
}

TEST_CASE("end-to-end instantiation") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(11);
    FamilyCandidate fam = quartic_family();

    auto inst = instantiate_at(fam, 1, rng);
    REQUIRE(inst.has_value());
    CHECK(inst->q == 103);
    CHECK(inst->r == 97);
    CHECK(inst->k_verified == 12);
    CHECK(ec::order_brute(inst->q, inst->A, inst->B) == 97);
    CHECK(inst->rho_numeric == Catch::Approx(std::log(103.0) / std::log(97.0)));
    CHECK_FALSE(inst->pairing_friendly); // 2^96 < 97 fails at toy size

    InstanceChecklist chk = verify_instance(*inst, rng);
    CHECK(chk.all_ok);

    SECTION("tampering is caught") {
        CurveInstance bad = *inst;
        bad.t += 1;
        InstanceChecklist c = verify_instance(bad, rng);
        CHECK_FALSE(c.cm_identity);
        CHECK_FALSE(c.all_ok);
    }
}

TEST_CASE("instance search over a range") {
    FamilyCandidate fam = quartic_family();
    SearchResult res = search_instances(fam, 0, 40, 123);
    bool found_x1 = false;
    for (const auto& c : res.instances) {
        if (c.x0 == 1) found_x1 = true;
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(3);
        CHECK(verify_instance(c, rng).all_ok);
    }
    CHECK(found_x1);
    CHECK(res.instances.size() + res.rejections.size() == 41);

    SECTION("rho_numeric approaches the family rho from above") {
        std::vector<double> rhos;
        for (const auto& c : res.instances) rhos.push_back(c.rho_numeric);
        REQUIRE(rhos.size() >= 3);
        for (size_t i = 1; i < rhos.size(); ++i) CHECK(rhos[i] < rhos[i - 1]);
        for (double v : rhos) CHECK(v > 1.0);
    }

    SECTION("empty and obstructed ranges") {
        SearchResult none = search_instances(fam, 10, 9, 1);
        CHECK(none.instances.empty());
        CHECK(none.rejections.empty());

        // q(x) = 4x^2 + 2 is even for every integer x
        FamilyCandidate blocked;
        blocked.k = 1;
        blocked.D = 1;
        blocked.t = Polynomial::of({2});
        blocked.r = Polynomial::of({1, 0, 4});
        blocked.q = Polynomial::of({2, 0, 4});
        blocked.y = Polynomial::of({0, 2});
        SearchResult stats = search_instances(blocked, 1, 5, 1);
        CHECK(stats.instances.empty());
        CHECK(stats.rejections.size() == 5);
        for (const auto& r : stats.rejections) CHECK(r.reason == "q(x0) composite");
    }

    SECTION("determinism for a fixed seed") {
        SearchResult again = search_instances(fam, 0, 40, 123);
        REQUIRE(again.instances.size() == res.instances.size());
        for (size_t i = 0; i < again.instances.size(); ++i) {
            CHECK(again.instances[i].q == res.instances[i].q);
            CHECK(again.instances[i].A == res.instances[i].A);
            CHECK(again.instances[i].B == res.instances[i].B);
        }
    }
}
