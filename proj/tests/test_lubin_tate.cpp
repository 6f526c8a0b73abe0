#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringtower/lubin_tate.hpp"
#include "ringtower/util.hpp"

using namespace ringtower;

namespace {

FieldParams qp(uint64_t p, unsigned f = 1) {
    FieldParams params;
    params.p = p;
    params.f = f;
    return params;
}

} // namespace

TEST_CASE("endomorphism of 2 for p = q = 3: frozen coefficients") {
    LubinTate lt(qp(3));
    auto e = lt.endomorphism(ExactScalar::from_int(2), 2, 4);
    WittScalarRing W(FqField(3, 1), 2);
    CHECK(e.window == 5);
    CHECK(lp_coeff(W, e, 1) == W.from_int(2));
    CHECK(lp_coeff(W, e, 2) == W.zero());
    CHECK(lp_coeff(W, e, 3) == W.from_int(7)); // 1/4 mod 9
    CHECK(lp_coeff(W, e, 4) == W.zero());
}

TEST_CASE("identity and uniformizer endomorphisms") {
    for (uint64_t p : {2ULL, 3ULL, 5ULL}) {
        LubinTate lt(qp(p));
        WittScalarRing W(FqField(p, 1), 3);
        auto one = lt.endomorphism(ExactScalar::from_int(1), 3, 8);
        CHECK(one.coeffs.size() == 1);
        CHECK(lp_coeff(W, one, 1) == W.one());

        auto up = lt.endomorphism(ExactScalar::from_int(int64_t(p)), 3, 8);
        auto P = lt.frobenius_series().realize<WittScalarRing>(W, 8);
        CHECK(lp_agree(W, up, P, 9));
    }
}

TEST_CASE("composition law: [a] after [b] equals [ab]") {
    LubinTate lt(qp(3));
    WittScalarRing W(FqField(3, 1), 3);
    const int64_t M = 8;
    for (auto [a, b] : {std::pair<int64_t, int64_t>{2, 2}, {2, 5}, {-1, 2}, {4, -1}, {3, 2}}) {
        auto ea = lt.endomorphism(ExactScalar::from_int(a), 3, M);
        auto eb = lt.endomorphism(ExactScalar::from_int(b), 3, M);
        auto eab = lt.endomorphism(ExactScalar::from_int(a * b), 3, M);
        auto comp = lp_compose(W, ea, eb);
        CHECK(lp_agree(W, comp, eab, M + 1));
    }
}

TEST_CASE("Teichmuller units act through the residue field") {
    FieldParams params = qp(2, 2); // q = 4
    LubinTate lt(params);
    FqField F4 = params.make_base_residue_field();
    WittScalarRing W(F4, 2);
    auto w = F4.gen();
    const int64_t M = 6;
    auto ew = lt.endomorphism(ExactScalar::teichmuller(w), 2, M);
    auto ew2 = lt.endomorphism(ExactScalar::teichmuller(F4.mul(w, w)), 2, M);
    CHECK(lp_coeff(W, ew, 1) == W.teichmuller(w));
    // [w] after [w] = [w^2]
    CHECK(lp_agree(W, lp_compose(W, ew, ew), ew2, M + 1));
    // order three: [w] cubed is the identity
    auto id = lp_compose(W, ew, lp_compose(W, ew, ew));
    CHECK(lp_coeff(W, id, 1) == W.one());
}

TEST_CASE("group law: degree-2 coefficients vanish for p = 3") {
    LubinTate lt(qp(3));
    WittScalarRing W(FqField(3, 1), 2);
    auto F = lt.formal_group(2, 6);
    CHECK(bv_coeff(W, F, 1, 0) == W.one());
    CHECK(bv_coeff(W, F, 0, 1) == W.one());
    CHECK(W.is_zero(bv_coeff(W, F, 1, 1)));
    CHECK(W.is_zero(bv_coeff(W, F, 2, 0)));
    CHECK(W.is_zero(bv_coeff(W, F, 0, 2)));
}

TEST_CASE("group law adds endomorphisms") {
    for (uint64_t p : {2ULL, 3ULL}) {
        LubinTate lt(qp(p));
        WittScalarRing W(FqField(p, 1), 2);
        const int64_t M = 6;
        auto F = lt.formal_group(2, M);
        for (auto [a, b] : {std::pair<int64_t, int64_t>{1, 1}, {2, 3}, {1, -1}, {2, -3}}) {
            auto ea = lt.endomorphism(ExactScalar::from_int(a), 2, M);
            auto eb = lt.endomorphism(ExactScalar::from_int(b), 2, M);
            auto eab = lt.endomorphism(ExactScalar::from_int(a + b), 2, M);
            auto sum = bv_subst_pair(W, F, ea, eb, M + 1);
            CHECK(lp_agree(W, sum, eab, M + 1));
        }
    }
}

TEST_CASE("commutation with the Frobenius series, sampled") {
    LubinTate lt(qp(5));
    WittScalarRing W(FqField(5, 1), 2);
    const int64_t M = 7;
    auto P = lt.frobenius_series().realize<WittScalarRing>(W, M);
    P.window = WINDOW_INF;
    for (int64_t a : {2, 3, 7, -1}) {
        auto ea = lt.endomorphism(ExactScalar::from_int(a), 2, M);
        auto lhs = lp_compose(W, ea, P);
        auto rhs = lp_compose(W, P, ea);
        CHECK(lp_agree(W, lhs, rhs, M + 1));
    }
}

TEST_CASE("mod-p shapes") {
    FieldParams params = qp(3);
    LubinTate lt(params);
    FqField F = params.make_base_residue_field();
    WittScalarRing W(F, 1);
    const int64_t M = 9;
    // the Frobenius series is T^q mod p
    auto P = lt.frobenius_series().realize<WittScalarRing>(W, M);
    CHECK(P.coeffs.size() == 1);
    CHECK(lp_coeff(W, P, 3) == W.one());
    // [a] = a*T mod (p, degree 2)
    for (int64_t a : {1, 2, 4, -1}) {
        auto ea = lt.endomorphism(ExactScalar::from_int(a), 1, M);
        CHECK(lp_coeff(W, ea, 1) == W.from_int(a));
        CHECK(W.is_zero(lp_coeff(W, ea, 2)));
    }
}

TEST_CASE("action: Frobenius power on a negative exponent, frozen") {
    FieldParams params = qp(3);
    LubinTate lt(params);
    EScalarRing R(params, 2);
    auto s = lp_monomial(R, -1, R.one());
    auto r = lt.act_phi_q(R, s);
    // (pT + T^q)^{-1} = T^{-q} - p T^{1-2q} mod p^2, exactly
    CHECK(r.window == WINDOW_INF);
    CHECK(r.coeffs.size() == 2);
    CHECK(lp_coeff(R, r, -3) == R.one());
    CHECK(lp_coeff(R, r, -5) == R.from_int(-3));
}

TEST_CASE("action: identities and constants") {
    FieldParams params = qp(3);
    LubinTate lt(params);
    EScalarRing R(params, 2);
    LaurentSeries<EScalarRing> s;
    s.coeffs[-2] = R.from_int(2);
    s.coeffs[0] = R.from_int(5);
    s.coeffs[3] = R.one();
    s.window = 6;
    auto r1 = lt.act(R, ExactScalar::from_int(1), s);
    CHECK(lp_agree(R, r1, s));
    CHECK(r1.window == s.window);

    auto c = lp_monomial(R, 0, R.from_int(7));
    auto rc = lt.act_phi_q(R, c);
    CHECK(lp_agree(R, rc, c));
    CHECK(rc.window == WINDOW_INF);
}

TEST_CASE("action laws: composition and Frobenius commutation") {
    FieldParams params = qp(3);
    LubinTate lt(params);
    EScalarRing R(params, 2);
    Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        LaurentSeries<EScalarRing> s;
        for (int64_t e = -2; e <= 3; ++e)
            if (rng.below(2)) {
                auto c = R.from_int(int64_t(rng.below(9)));
                if (!R.is_zero(c)) s.coeffs[e] = c;
            }
        s.window = 7;
        lp_normalize(R, s);

        auto a = ExactScalar::from_int(2), b = ExactScalar::from_int(5);
        auto lhs = lt.act(R, a, lt.act(R, b, s));
        auto rhs = lt.act(R, ExactScalar::from_int(10), s);
        CHECK(lp_agree(R, lhs, rhs));

        auto fq_then_a = lt.act(R, a, lt.act_phi_q(R, s));
        auto a_then_fq = lt.act_phi_q(R, lt.act(R, a, s));
        CHECK(lp_agree(R, fq_then_a, a_then_fq));
    }
}

TEST_CASE("action over a ramified coefficient ring") {
    FieldParams params = qp(3);
    params.e = 2;
    LubinTate lt(params);
    EScalarRing R(params, 4);
    auto s = lp_add(R, lp_monomial(R, 1, R.one()), lp_monomial(R, 0, R.pi()));
    auto r = lt.act_phi_q(R, s);
    // phi_q(T) = 3T + T^3; the constant pi is fixed
    CHECK(lp_coeff(R, r, 0) == R.pi());
    CHECK(lp_coeff(R, r, 1) == R.from_int(3));
    CHECK(lp_coeff(R, r, 3) == R.one());
}

TEST_CASE("action errors") {
    FieldParams params = qp(3);
    LubinTate lt(params);
    EScalarRing R(params, 2);
    // 9 is neither a unit nor p
    auto s = lp_monomial(R, 1, R.one());
    CHECK_THROWS_AS(lt.act(R, ExactScalar::from_int(9), s), config_error);
    // exact input with positive exponents has no finite certified image
    CHECK_THROWS_AS(lt.act(R, ExactScalar::from_int(2), s), config_error);
    CHECK_NOTHROW(lt.act(R, ExactScalar::from_int(2), s, 8));
}

TEST_CASE("custom Frobenius series validation") {
    auto with_coeffs = [](std::map<int64_t, int64_t> coeffs) {
        FrobeniusSeries P;
        P.coeffs = std::move(coeffs);
        LubinTate(FieldParams{.p = 3}, P);
    };
    auto bad_constant = [&] { with_coeffs({{0, 1}, {1, 3}, {3, 1}}); };
    auto bad_linear = [&] { with_coeffs({{1, 2}, {3, 1}}); };
    auto bad_middle = [&] { with_coeffs({{1, 3}, {2, 1}, {3, 1}}); };
    CHECK_THROWS_AS(bad_constant(), config_error);
    CHECK_THROWS_AS(bad_linear(), config_error);
    CHECK_THROWS_AS(bad_middle(), config_error);
    // a legal non-standard choice: 3T + 3T^2 + T^3
    FrobeniusSeries P;
    P.coeffs = {{1, 3}, {2, 3}, {3, 1}};
    LubinTate lt(FieldParams{.p = 3}, P);
    auto e = lt.endomorphism(ExactScalar::from_int(2), 2, 5);
    WittScalarRing W(FqField(3, 1), 2);
    auto Pw = P.realize<WittScalarRing>(W, 5);
    Pw.window = WINDOW_INF;
    CHECK(lp_agree(W, lp_compose(W, e, Pw), lp_compose(W, Pw, e), 6));
}
