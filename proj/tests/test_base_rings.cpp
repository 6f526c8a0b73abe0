#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringtower/field_params.hpp"
#include "ringtower/finite_field.hpp"
#include "ringtower/padic_scalar.hpp"
#include "ringtower/util.hpp"

using namespace ringtower;

TEST_CASE("finite field construction and validation") {
    CHECK_NOTHROW(FqField(2, 1));
    CHECK_NOTHROW(FqField(2, 2));
    CHECK_NOTHROW(FqField(2, 3));
    CHECK_NOTHROW(FqField(3, 2));
    CHECK_NOTHROW(FqField(3, 3));
    CHECK_NOTHROW(FqField(5, 2));
    CHECK_NOTHROW(FqField(5, 3));
    // x^2 + 1 = (x+1)^2 over F_2: reducible
    CHECK_THROWS_AS(FqField(2, std::vector<uint64_t>{1, 0, 1}, 2), config_error);
    // x^2 + 2 over F_3 has root 1: reducible
    CHECK_THROWS_AS(FqField(3, std::vector<uint64_t>{2, 0, 1}, 2), config_error);
    CHECK_THROWS_AS(FqField(4, 1), config_error); // 4 not prime
    CHECK_THROWS_AS(FqField(2, std::vector<uint64_t>{1, 2, 1}, 2), config_error); // not monic mod 2
}

TEST_CASE("F_4 arithmetic follows w^2 = w + 1") {
    FqField F(2, 2);
    auto w = F.gen();
    auto w2 = F.mul(w, w);
    CHECK(w2 == F.add(w, F.one())); // w^2 = w + 1
    CHECK(F.mul(w2, w) == F.one()); // w^3 = 1
    CHECK(F.inv(w) == w2);
    CHECK(F.frobenius(w) == w2);
    CHECK(F.pth_root(w2) == w);
    CHECK(F.frobenius(F.pth_root(w)) == w);
}

TEST_CASE("field axioms exhaustively on small fields") {
    for (auto [p, d] : {std::pair<uint64_t, unsigned>{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
        FqField F(p, d);
        for (uint64_t i = 0; i < F.size(); ++i) {
            auto a = F.decode(i);
            CHECK(F.decode(F.encode(a)) == a);
            if (!F.is_zero(a)) {
                CHECK(F.mul(a, F.inv(a)) == F.one());
                // Frobenius round trip through the p-th root
                CHECK(F.pth_root(F.frobenius(a)) == a);
            }
            for (uint64_t j = 0; j < F.size(); ++j) {
                auto b = F.decode(j);
                // Frobenius is a field homomorphism
                CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
                CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
            }
        }
    }
}

TEST_CASE("multiplicative generator has full order") {
    for (auto [p, d] : {std::pair<uint64_t, unsigned>{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
        FqField F(p, d);
        auto g = F.multiplicative_generator();
        uint64_t n = F.size() - 1;
        CHECK(F.is_one(F.pow(g, n)));
        for (uint64_t k = 1; k < n; ++k) CHECK(!F.is_one(F.pow(g, k)));
    }
}

TEST_CASE("subfield embedding is a field homomorphism") {
    FqField F3(3, 1), F9(3, 2);
    SubfieldEmbedding emb(F3, F9);
    for (uint64_t i = 0; i < 3; ++i)
        for (uint64_t j = 0; j < 3; ++j) {
            auto a = F3.decode(i), b = F3.decode(j);
            CHECK(emb.apply(F3.mul(a, b)) == F9.mul(emb.apply(a), emb.apply(b)));
            CHECK(emb.apply(F3.add(a, b)) == F9.add(emb.apply(a), emb.apply(b)));
        }
    CHECK(emb.apply(F3.one()) == F9.one());
}

TEST_CASE("Teichmuller lift: fixed points and frozen value") {
    // identity cases
    WittScalarRing W2(FqField(2, 1), 3);
    CHECK(W2.teichmuller(FqField(2, 1).one()) == W2.one());
    CHECK(W2.teichmuller(FqField(2, 1).zero()) == W2.zero());

    // F_5, lambda = 2, N = 3: iterate x -> x^5 from 2: 2, 32, 57 (mod 125)
    FqField F5(5, 1);
    WittScalarRing W5(F5, 3);
    auto t = W5.teichmuller(F5.from_int(2));
    CHECK(t == WittScalarRing::Elem{57});
    // (q-1)-th root of unity: t^4 = 1
    CHECK(W5.pow(t, 4) == W5.one());
}

TEST_CASE("Teichmuller multiplicativity, exhaustive for small residue fields") {
    for (auto [p, d] : {std::pair<uint64_t, unsigned>{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
        FqField F(p, d);
        for (unsigned N : {1u, 2u, 3u, 4u}) {
            WittScalarRing W(F, N);
            for (uint64_t i = 0; i < F.size(); ++i)
                for (uint64_t j = 0; j < F.size(); ++j) {
                    auto a = F.decode(i), b = F.decode(j);
                    CHECK(W.teichmuller(F.mul(a, b)) == W.mul(W.teichmuller(a), W.teichmuller(b)));
                }
            // fixed point of x -> x^{#F}
            for (uint64_t i = 0; i < F.size(); ++i) {
                auto t = W.teichmuller(F.decode(i));
                CHECK(W.pow(t, F.size()) == t);
            }
        }
    }
}

TEST_CASE("Teichmuller digit expansion round trip") {
    FqField F(3, 2);
    WittScalarRing W(F, 4);
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        WittScalarRing::Elem x(W.degree());
        for (auto& c : x) c = rng.below(W.modulus());
        auto digits = W.teichmuller_digits(x);
        CHECK(digits.size() == 4);
        CHECK(W.from_teichmuller_digits(digits) == x);
    }
}

TEST_CASE("coefficient Frobenius: digit-wise p-th power") {
    FqField F4(2, 2);
    WittScalarRing W(F4, 2);
    auto w = F4.gen();
    // x = [w] + 2[1]  ->  [w^2] + 2[1]
    auto x = W.add(W.teichmuller(w), W.from_int(2));
    auto fx = W.frobenius(x);
    auto expect = W.add(W.teichmuller(F4.mul(w, w)), W.from_int(2));
    CHECK(fx == expect);

    // homomorphism + order dividing the field degree, on random samples
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        WittScalarRing::Elem a(W.degree()), b(W.degree());
        for (auto& c : a) c = rng.below(W.modulus());
        for (auto& c : b) c = rng.below(W.modulus());
        CHECK(W.frobenius(W.mul(a, b)) == W.mul(W.frobenius(a), W.frobenius(b)));
        CHECK(W.frobenius(W.add(a, b)) == W.add(W.frobenius(a), W.frobenius(b)));
        CHECK(W.frobenius(W.frobenius(a)) == a); // order | 2
    }
}

TEST_CASE("embeddings: sigma_i on Teichmuller lifts") {
    FieldParams params;
    params.p = 2;
    params.f = 2;
    WittScalarRing src(params.make_base_residue_field(), 3);
    WittScalarRing dst(params.make_residue_field(), 3);
    CoefficientEmbedding sigma(src, dst);

    FqField F4 = src.residue_field();
    auto w = F4.gen();
    // sigma_1([w]) = sigma_0([w^2])
    CHECK(sigma.apply(1, src.teichmuller(w)) == sigma.apply(0, src.teichmuller(F4.mul(w, w))));
    // sigma_0 is the plain inclusion on F_q = F here
    CHECK(sigma.apply(0, src.one()) == dst.one());

    // ring homomorphism and the defining congruence sigma_i(x) = sigma_0(x)^{p^i} mod p
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        WittScalarRing::Elem a(src.degree()), b(src.degree());
        for (auto& c : a) c = rng.below(src.modulus());
        for (auto& c : b) c = rng.below(src.modulus());
        for (unsigned i = 0; i < params.f; ++i) {
            CHECK(sigma.apply(i, src.mul(a, b)) == dst.mul(sigma.apply(i, a), sigma.apply(i, b)));
            CHECK(sigma.apply(i, src.add(a, b)) == dst.add(sigma.apply(i, a), sigma.apply(i, b)));
            auto lhs = dst.reduce_mod_p(sigma.apply(i, a));
            auto rhs = dst.reduce_mod_p(dst.pow(sigma.apply(0, a), checked_pow_u64(params.p, i)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("Hensel inversion against multiplication") {
    for (auto [p, d] : {std::pair<uint64_t, unsigned>{3, 2}, {2, 3}, {5, 1}}) {
        FqField F(p, d);
        WittScalarRing W(F, 4);
        Rng rng(19);
        int found = 0;
        while (found < 25) {
            WittScalarRing::Elem a(W.degree());
            for (auto& c : a) c = rng.below(W.modulus());
            if (!W.is_unit(a)) continue;
            ++found;
            CHECK(W.mul(a, W.inv(a)) == W.one());
        }
        CHECK_THROWS_AS(W.inv(W.from_int(int64_t(p))), not_invertible);
        CHECK_THROWS_AS(W.inv(W.zero()), not_invertible);
    }
}

TEST_CASE("precision contract: reduce-then-operate equals operate-then-reduce") {
    FqField F(3, 2);
    WittScalarRing W4(F, 4), W2(F, 2);
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        WittScalarRing::Elem a(W4.degree()), b(W4.degree());
        for (auto& c : a) c = rng.below(W4.modulus());
        for (auto& c : b) c = rng.below(W4.modulus());
        auto down_then_op = W2.mul(W4.convert_down(a, W2), W4.convert_down(b, W2));
        auto op_then_down = W4.convert_down(W4.mul(a, b), W2);
        CHECK(down_then_op == op_then_down);
        CHECK(W2.add(W4.convert_down(a, W2), W4.convert_down(b, W2)) ==
              W4.convert_down(W4.add(a, b), W2));
    }
}

TEST_CASE("unramified scalar ring wraps the Witt ring when e = 1") {
    FieldParams params;
    params.p = 3;
    params.f = 2;
    EScalarRing R(params, 3);
    CHECK(R.precision_p() == 3);
    auto x = R.from_int(7), y = R.from_int(5);
    CHECK(R.mul(x, y) == R.from_int(35));
    CHECK(R.add(x, y) == R.from_int(12));
    CHECK(R.mul(x, R.inv(x)) == R.one());
    CHECK(R.pi() == R.from_int(3));
    CHECK(R.is_divisible_by_p(R.from_int(6)));
    CHECK(!R.is_divisible_by_p(R.from_int(7)));
    auto digits = R.pi_digits(R.from_int(3)); // 3 = 0 + 3*[1]
    CHECK(R.residue_field().is_zero(digits[0]));
    CHECK(R.residue_field().is_one(digits[1]));
}

TEST_CASE("ramified scalar ring: pi^2 = 3 toy extension") {
    FieldParams params;
    params.p = 3;
    params.f = 1;
    params.e = 2;
    EScalarRing R(params, 4); // pi-precision 4 = p-precision 2 per component
    auto piv = R.pi();
    CHECK(R.mul(piv, piv) == R.from_int(3));
    CHECK(R.mul(R.mul(piv, piv), R.mul(piv, piv)) == R.from_int(9));

    // 3 has pi-digits (0, 0, 1, 0)
    auto digits = R.pi_digits(R.from_int(3));
    REQUIRE(digits.size() == 4);
    CHECK(R.residue_field().is_zero(digits[0]));
    CHECK(R.residue_field().is_zero(digits[1]));
    CHECK(R.residue_field().is_one(digits[2]));
    CHECK(R.residue_field().is_zero(digits[3]));

    // digit round trip on random elements
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        auto x = R.add(R.from_int(int64_t(rng.below(9))), R.mul(piv, R.from_int(int64_t(rng.below(9)))));
        CHECK(R.from_pi_digits(R.pi_digits(x)) == x);
    }

    // units invert
    auto u = R.add(R.one(), piv);
    CHECK(R.mul(u, R.inv(u)) == R.one());
    CHECK_THROWS_AS(R.inv(piv), not_invertible);
    CHECK_THROWS_AS(R.frobenius(R.one()), config_error);

    // Eisenstein validation
    FieldParams bad = params;
    bad.eisenstein = {-3, 1}; // a_1 = 1 not divisible by p
    CHECK_THROWS_AS(EScalarRing(bad, 4), config_error);
    FieldParams bad2 = params;
    bad2.eisenstein = {-9, 0}; // constant term valuation 2
    CHECK_THROWS_AS(EScalarRing(bad2, 4), config_error);
}

TEST_CASE("deterministic rng is stable across runs") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(42);
    // frozen first values guard against accidental algorithm changes
    CHECK(c.next_u64() == 13679457532755275413ULL);
}
