// SPDX-License-Identifier: Apache-2.0

#include "forge/polynomial.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace forge;

namespace {

std::mt19937 rng(20240817);

Polynomial random_poly(int max_deg, int coeff_bound) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    std::uniform_int_distribution<int> dc(-coeff_bound, coeff_bound);
    int deg = dd(rng);
    std::vector<Rat> c(deg + 1);
    for (auto& v : c) v = Rat(dc(rng));
    return Polynomial(std::move(c));
}

// Exact irreducibility oracle for integer polynomials of degree <= 4,
// independent of the library implementation: rational-root test plus,
// for quartics, the monic quadratic-split criterion after the standard
// monicization g(y) = a^3 f(y/a).
bool oracle_irreducible(const std::vector<long>& f) {
    int n = static_cast<int>(f.size()) - 1;
    REQUIRE(n >= 1);
    REQUIRE(f.back() != 0);
    if (n == 1) return true;

    // rational roots p/q with p | f[0], q | f[n]
    auto divisors = [](long v) {
        std::vector<long> out;
        v = std::abs(v);
        for (long d = 1; d <= v; ++d)
            if (v % d == 0) out.push_back(d);
        return out;
    };
    auto eval = [&](const Rat& x) {
        Rat acc(0);
        for (size_t i = f.size(); i-- > 0;) acc = acc * x + Rat(f[i]);
        return acc;
    };
    if (f.front() == 0) return false; // root at 0
    for (long p : divisors(f.front()))
        for (long q : divisors(f.back()))
            for (int s : {1, -1}) {
                Rat root(s * p, q);
                root.canonicalize();
                if (eval(root) == 0) return false;
            }
    if (n <= 3) return true;

    // quartic without rational roots: reducible iff it splits into two
    // quadratics; check over the monicized model y^4 + b y^3 + ac y^2 +
    // a^2 d y + a^3 e with integer monic quadratic factors (Gauss)
    long a = f[4], b = f[3];
    Int c2 = Int(a) * f[2], c1 = Int(a) * a * f[1], c0 = Int(a) * a * a * f[0];
    for (long qq : divisors(static_cast<long>(std::abs(c0.get_si())))) {
        for (long qsign : {1, -1}) {
            Int Q = qsign * qq;
            if (c0 % Q != 0) continue;
            Int S = c0 / Q;
            // p + r = b, p r = c2 - Q - S, p S + r Q = c1
            Int pr = c2 - Q - S;
            Int disc = Int(b) * b - 4 * pr;
            if (disc < 0) continue;
            auto root = exact_nth_root(disc, 2);
            if (!root) continue;
            for (int s : {1, -1}) {
                Int num = Int(b) + s * *root;
                if (num % 2 != 0) continue;
                Int P = num / 2, R = Int(b) - P;
                if (P * S + R * Q == c1) return false; // quadratic split found
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("polynomial ring basics") {
    Polynomial f = Polynomial::of({1, 2, 3}); // 3x^2 + 2x + 1
    Polynomial g = Polynomial::of({-1, 1});   // x - 1
    CHECK(f.degree() == 2);
    CHECK(g.degree() == 1);
    CHECK((f + g) == Polynomial::of({0, 3, 3}));
    CHECK((f - f).is_zero());
    CHECK((f * g) == Polynomial::of({-1, -1, -1, 3}));
    CHECK(f.evaluate(Rat(2)) == 17);
    CHECK(Polynomial::of({0, 0, 0}).is_zero());
    CHECK_THROWS_AS(Polynomial().degree(), std::domain_error);
    CHECK(Polynomial().degree_or(-1) == -1);
    CHECK(f.derivative() == Polynomial::of({2, 6}));
    CHECK(Polynomial::of({1}).derivative().is_zero());
}

TEST_CASE("composition and power substitution") {
    Polynomial f = Polynomial::of({1, 0, 1}); // x^2 + 1
    CHECK(f.compose(Polynomial::of({1, 1})) == Polynomial::of({2, 2, 1}));
    CHECK(f.substitute_power(3) == Polynomial::of({1, 0, 0, 0, 0, 0, 1}));
    CHECK(f.substitute_power(3).is_in_power_subring(3));
    CHECK_FALSE(Polynomial::of({0, 1, 0, 1}).is_in_power_subring(2));
    CHECK(Polynomial::of({5}).is_in_power_subring(7));
    CHECK(Polynomial().is_in_power_subring(2));
}

TEST_CASE("division with remainder round-trip", "[property]") {
    for (int iter = 0; iter < 300; ++iter) {
        Polynomial a = random_poly(8, 6);
        Polynomial b = random_poly(4, 6);
        if (b.is_zero()) continue;
        auto [q, r] = poly_divrem(a, b);
        CHECK(a == q * b + r);
        if (!r.is_zero()) CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("gcd and extended gcd") {
    Polynomial a = Polynomial::of({-1, 0, 1});    // (x-1)(x+1)
    Polynomial b = Polynomial::of({-1, 2, -1});   // -(x-1)^2
    CHECK(poly_gcd(a, b) == Polynomial::of({-1, 1}));
    for (int iter = 0; iter < 100; ++iter) {
        Polynomial f = random_poly(5, 4), g = random_poly(5, 4);
        if (f.is_zero() && g.is_zero()) continue;
        auto x = poly_xgcd(f, g);
        CHECK(x.u * f + x.v * g == x.g);
        if (!f.is_zero()) CHECK(poly_divides(x.g, f));
        if (!g.is_zero()) CHECK(poly_divides(x.g, g));
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == Polynomial::of({-1, 1}));
    CHECK(cyclotomic(2) == Polynomial::of({1, 1}));
    CHECK(cyclotomic(3) == Polynomial::of({1, 1, 1}));
    CHECK(cyclotomic(4) == Polynomial::of({1, 0, 1}));
    CHECK(cyclotomic(6) == Polynomial::of({1, -1, 1}));
    CHECK(cyclotomic(12) == Polynomial::of({1, 0, -1, 0, 1}));
    // 105 is the first index with a coefficient outside {-1, 0, 1}
    CHECK(cyclotomic(105).coeff(7) == -2);

    SECTION("product formula prod_{d | n} Phi_d = x^n - 1") {
        for (unsigned long n = 1; n <= 200; ++n) {
            Polynomial prod(Rat(1));
            for (unsigned long d = 1; d <= n; ++d)
                if (n % d == 0) prod = prod * cyclotomic(d);
            Polynomial xn = Polynomial::monomial(n) - Polynomial(Rat(1));
            CHECK(prod == xn);
            CHECK(static_cast<unsigned long>(cyclotomic(n).degree()) == euler_phi(n));
        }
    }
}

TEST_CASE("irreducibility over Q matches a brute-force oracle", "[slow]") {
    // every integer polynomial of degree <= 4 with coefficients in {-3..3}
    long count = 0, irreducible_count = 0;
    for (int deg = 1; deg <= 4; ++deg) {
        std::vector<long> c(deg + 1, -3);
        while (true) {
            if (c.back() != 0) {
                std::vector<Rat> rc(c.begin(), c.end());
                Polynomial f{std::vector<Rat>(rc)};
                bool expect = oracle_irreducible(c);
                INFO("f = " << f.to_string());
                CHECK(irreducible_over_Q(f) == expect);
                ++count;
                if (expect) ++irreducible_count;
            }
            size_t pos = 0;
            while (pos < c.size() && ++c[pos] > 3) c[pos++] = -3;
            if (pos == c.size()) break;
        }
    }
    CHECK(count > 10000);
    CHECK(irreducible_count > 0);
}

TEST_CASE("irreducibility of named polynomials") {
    CHECK(irreducible_over_Q(Polynomial::of({1, 6, 18, 36, 36})));   // quartic subgroup order
    CHECK(irreducible_over_Q(Polynomial::of({1, 6, 24, 36, 36})));   // quartic field order
    CHECK_FALSE(irreducible_over_Q(Polynomial::of({1, 2, 1})));      // (x+1)^2
    CHECK_FALSE(irreducible_over_Q(Rat(1, 3) * Polynomial::of({1, 2, 1})));
    CHECK(irreducible_over_Q(cyclotomic(105)));  // reducible mod every prime
    CHECK(irreducible_over_Q(cyclotomic(12)));
    CHECK_FALSE(irreducible_over_Q(Polynomial::of({0, 1, 0, 0, 1}))); // x | f
    CHECK(irreducible_over_Q(Polynomial::of({2, 0, 0, 0, 0, 0, 0, 0, 1}))); // x^8 + 2, Eisenstein
}

TEST_CASE("squarefree decomposition and perfect powers") {
    Polynomial u = Polynomial::of({1, 1});      // x + 1
    Polynomial v = Polynomial::of({2, 0, 1});   // x^2 + 2
    Polynomial f = u * u * u * v * v;
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == v.monic());
    CHECK(parts[0].second == 2);
    CHECK(parts[1].first == u.monic());
    CHECK(parts[1].second == 3);

    auto [b1, e1] = poly_perfect_power((u * v).pow(3));
    CHECK(e1 == 3);
    CHECK(b1.pow(3) == (u * v).pow(3));
    auto [b2, e2] = poly_perfect_power(Polynomial::of({1, 2, 3}));
    CHECK(e2 == 1);
    auto [b3, e3] = poly_perfect_power(Rat(1, 3) * Polynomial::of({1, 2, 1}));
    CHECK(e3 == 1); // leading coefficient 1/3 has no rational square root
    auto [b4, e4] = poly_perfect_power(Rat(1, 4) * Polynomial::of({1, 2, 1}));
    CHECK(e4 == 2);
    CHECK(b4 == Rat(1, 2) * Polynomial::of({1, 1}));
}

TEST_CASE("integrality residues") {
    // (x^2 + x)/2 is an integer for every integer x
    Polynomial f = Rat(1, 2) * Polynomial::of({0, 1, 1});
    auto rep = content_and_integrality(f);
    CHECK(rep.den_lcm == 2);
    CHECK(rep.residues == std::vector<Int>{0, 1});

    // x/2 is integral only for even x
    auto rep2 = content_and_integrality(Rat(1, 2) * Polynomial::x());
    CHECK(rep2.residues == std::vector<Int>{0});

    // (2x + 1)/4 is never an integer
    auto rep3 = content_and_integrality(Rat(1, 4) * Polynomial::of({1, 2}));
    CHECK(rep3.residues.empty());

    SECTION("periodicity: integrality depends only on x mod den_lcm") {
        for (int iter = 0; iter < 50; ++iter) {
            Polynomial f = random_poly(4, 5);
            if (f.is_zero()) continue;
            std::uniform_int_distribution<int> dd(2, 5);
            f = Rat(1, dd(rng)) * f;
            auto r = content_and_integrality(f);
            for (Int a = -20; a < 20; ++a) {
                Int rem = a % r.den_lcm;
                if (rem < 0) rem += r.den_lcm;
                bool integral = f.evaluate(Rat(a)).get_den() == 1;
                bool listed = std::binary_search(r.residues.begin(), r.residues.end(), rem);
                CHECK(integral == listed);
            }
        }
    }
}

TEST_CASE("exact polynomial square root") {
    Polynomial s = Rat(1, 3) * Polynomial::of({1, 4, 6});
    auto r = poly_sqrt(s * s);
    REQUIRE(r.has_value());
    CHECK((*r == s || *r == -s));
    CHECK_FALSE(poly_sqrt(Polynomial::of({1, 1})).has_value());
    CHECK_FALSE(poly_sqrt(Polynomial::of({1, 0, 2})).has_value());
    CHECK_FALSE(poly_sqrt(Polynomial::of({2, 0, 1})).has_value());
    CHECK(poly_sqrt(Polynomial()).has_value());
    for (int iter = 0; iter < 100; ++iter) {
        Polynomial f = random_poly(5, 5);
        if (f.is_zero()) continue;
        auto root = poly_sqrt(f * f);
        REQUIRE(root.has_value());
        CHECK(*root * *root == f * f);
    }
}

TEST_CASE("string serialization round-trip", "[property]") {
    for (int iter = 0; iter < 200; ++iter) {
        Polynomial f = random_poly(6, 9);
        std::uniform_int_distribution<int> dd(1, 7);
        f = Rat(1, dd(rng)) * f;
        CHECK(Polynomial::from_strings(f.to_strings()) == f);
    }
    CHECK(parse_rat("-3/6") == Rat(-1, 2));
    CHECK(format_rat(Rat(5)) == "5");
    CHECK(format_rat(Rat(1, 3)) == "1/3");
    CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}
