#include "ringtower/lubin_tate.hpp"

#include <algorithm>

namespace ringtower {

namespace {

// F(P(X), P(Y)): substitute the univariate series per variable slot.
template <typename Ring>
Bivariate<Ring> bv_subst_per_variable(const Ring& R, const Bivariate<Ring>& F,
                                      const LaurentSeries<Ring>& P, int64_t cap) {
    int64_t max_i = 0, max_j = 0;
    for (const auto& [k, c] : F.coeffs) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    int64_t m = std::max(max_i, max_j);
    std::vector<LaurentSeries<Ring>> Pp(m + 1);
    Pp[0] = lp_one(R);
    for (int64_t i = 1; i <= m; ++i) Pp[i] = lp_truncate(R, lp_mul(R, Pp[i - 1], P), cap);
    Bivariate<Ring> r;
    r.total_window = std::min(F.total_window, cap);
    for (const auto& [k, c] : F.coeffs) {
        for (const auto& [ex, cx] : Pp[k.first].coeffs)
            for (const auto& [ey, cy] : Pp[k.second].coeffs) {
                if (ex + ey >= r.total_window) continue;
                auto add = R.mul(c, R.mul(cx, cy));
                auto it = r.coeffs.find({ex, ey});
                if (it == r.coeffs.end())
                    r.coeffs[{ex, ey}] = std::move(add);
                else
                    it->second = R.add(it->second, add);
            }
    }
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = R.is_zero(it->second) ? r.coeffs.erase(it) : std::next(it);
    return r;
}

// P(F(X, Y)) for a univariate polynomial P with exponents >= 1.
template <typename Ring>
Bivariate<Ring> bv_apply_outer(const Ring& R, const LaurentSeries<Ring>& P,
                               const Bivariate<Ring>& F, int64_t cap) {
    Bivariate<Ring> acc;
    acc.total_window = cap;
    int64_t prev_exp = -1;
    std::vector<std::pair<int64_t, typename Ring::Elem>> terms(P.coeffs.begin(), P.coeffs.end());
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (prev_exp >= 0)
            for (int64_t k = 0; k < prev_exp - it->first; ++k) acc = bv_mul(R, acc, F, cap);
        Bivariate<Ring> cterm;
        cterm.total_window = cap;
        bv_set(R, cterm, 0, 0, it->second);
        acc = bv_add(R, acc, cterm);
        acc.total_window = cap;
        prev_exp = it->first;
    }
    for (int64_t k = 0; k < prev_exp; ++k) acc = bv_mul(R, acc, F, cap);
    acc.total_window = cap;
    return acc;
}

} // namespace

BigModRing::Elem ExactScalar::realize(const BigModRing& R) const {
    auto r = R.from_int(int_part);
    cpp_int pk = 1;
    for (const auto& d : teich_digits) {
        if (!R.residue_field().is_zero(d)) {
            auto t = R.teichmuller(d);
            for (auto& c : t) c *= pk; // scale by p^i before reduction
            for (auto& c : t) c %= R.modulus();
            r = R.add(r, t);
        }
        pk *= R.residue_field().p();
    }
    return r;
}

WittScalarRing::Elem ExactScalar::realize(const WittScalarRing& W) const {
    BigModRing B(W.residue_field(), W.precision());
    return B.to_witt(W, realize(B));
}

bool ExactScalar::is_zero_residue(const FqField& F) const {
    return F.is_zero(residue(F));
}

FqField::Elem ExactScalar::residue(const FqField& F) const {
    cpp_int r = int_part % F.p();
    if (r < 0) r += F.p();
    auto v = F.from_int(static_cast<uint64_t>(r));
    if (!teich_digits.empty()) v = F.add(v, teich_digits[0]);
    return v;
}

ExactScalar exact_from_digits(const BigModRing& R, const BigModRing::Elem& x, unsigned count) {
    ExactScalar s;
    auto cur = x;
    for (unsigned i = 0; i < count && i < R.precision(); ++i) {
        auto lambda = R.reduce_mod_p(cur);
        s.teich_digits.push_back(lambda);
        cur = R.divide_by_p_exact(R.sub(cur, R.teichmuller(lambda)));
    }
    return s;
}

FrobeniusSeries FrobeniusSeries::standard(uint64_t p, uint64_t q) {
    FrobeniusSeries s;
    s.coeffs[1] = static_cast<int64_t>(p);
    s.coeffs[static_cast<int64_t>(q)] = 1;
    return s;
}

void FrobeniusSeries::validate(uint64_t p, uint64_t q) const {
    auto get = [&](int64_t e) -> int64_t {
        auto it = coeffs.find(e);
        return it == coeffs.end() ? 0 : it->second;
    };
    for (const auto& [e, c] : coeffs) {
        (void)c;
        if (e < 1) throw config_error("Frobenius series must have no constant term");
        if (e > 256) throw config_error("Frobenius series degree cap exceeded");
    }
    if (get(1) != static_cast<int64_t>(p))
        throw config_error("Frobenius series must be congruent to p*T modulo degree 2");
    const auto pi = static_cast<int64_t>(p);
    auto modp = [&](int64_t c) { return ((c % pi) + pi) % pi; };
    for (const auto& [e, c] : coeffs)
        if (e != static_cast<int64_t>(q) && modp(c) != 0)
            throw config_error("Frobenius series must be congruent to T^q modulo p");
    if (modp(get(static_cast<int64_t>(q))) != 1)
        throw config_error("Frobenius series must be congruent to T^q modulo p");
}

LubinTate::LubinTate(FieldParams params, std::optional<FrobeniusSeries> custom)
    : params_(std::move(params)), q_(params_.q()) {
    params_.validate();
    P_ = custom ? *std::move(custom) : FrobeniusSeries::standard(params_.p, q_);
    P_.validate(params_.p, q_);
}

LaurentSeries<WittScalarRing> LubinTate::endomorphism(const ExactScalar& a, unsigned N,
                                                      int64_t M) const {
    if (N == 0 || M < 1) throw config_error("endomorphism needs positive precision and degree");
    FqField Fq = params_.make_base_residue_field();
    const unsigned Nbig = N + static_cast<unsigned>(M);
    BigModRing B(Fq, Nbig);
    const int64_t cap = M + 1;

    auto Pbig = P_.template realize<BigModRing>(B, M);
    Pbig.window = WINDOW_INF;

    LaurentSeries<BigModRing> s;
    auto alin = a.realize(B);
    if (!B.is_zero(alin)) s.coeffs[1] = alin;

    for (int64_t n = 2; n <= M; ++n) {
        auto lhs = lp_truncate(B, lp_compose(B, s, Pbig), cap);
        lhs.window = WINDOW_INF;
        auto rhs = lp_truncate(B, lp_compose(B, Pbig, s), cap);
        rhs.window = WINDOW_INF;
        auto e = lp_coeff(B, lp_sub(B, lhs, rhs), n);
        if (B.is_zero(e)) continue;
        // c_n * (p^n - p) = -e  =>  c_n = (-e / p) * (p^{n-1} - 1)^{-1}
        BigModRing::Elem c;
        try {
            c = B.divide_by_p_exact(B.neg(e));
        } catch (const precision_error&) {
            throw config_error("inconsistent linear system: input is not a Frobenius series");
        }
        cpp_int unit = 1;
        for (int64_t i = 0; i + 1 < n; ++i) unit *= params_.p;
        unit -= 1;
        c = B.mul(c, B.inv(B.from_int(unit)));
        if (!B.is_zero(c)) s.coeffs[n] = c;
    }

    WittScalarRing W(Fq, N);
    auto r = lp_map_coeffs(B, W, s, [&](const BigModRing::Elem& c) { return B.to_witt(W, c); });
    r.window = cap;

    // Re-verify the defining commutation in the target ring.
    auto Pw = P_.template realize<WittScalarRing>(W, M);
    Pw.window = WINDOW_INF;
    auto rr = r;
    rr.window = WINDOW_INF;
    auto diff = lp_sub(W, lp_truncate(W, lp_compose(W, rr, Pw), cap),
                       lp_truncate(W, lp_compose(W, Pw, rr), cap));
    if (!lp_is_zero(lp_truncate(W, diff, cap)))
        throw config_error("inconsistent linear system: commutation check failed");
    return r;
}

Bivariate<WittScalarRing> LubinTate::formal_group(unsigned N, int64_t M) const {
    if (N == 0 || M < 1) throw config_error("formal group needs positive precision and degree");
    FqField Fq = params_.make_base_residue_field();
    const unsigned Nbig = N + static_cast<unsigned>(M);
    BigModRing B(Fq, Nbig);
    const int64_t cap = M + 1;

    auto Pbig = P_.template realize<BigModRing>(B, M);
    Pbig.window = WINDOW_INF;

    Bivariate<BigModRing> F;
    F.total_window = WINDOW_INF;
    bv_set(B, F, 1, 0, B.one());
    bv_set(B, F, 0, 1, B.one());

    for (int64_t n = 2; n <= M; ++n) {
        auto lhs = bv_subst_per_variable(B, F, Pbig, cap);
        auto rhs = bv_apply_outer(B, Pbig, F, cap);
        auto E = bv_sub(B, lhs, rhs);
        cpp_int unit = 1;
        for (int64_t i = 0; i + 1 < n; ++i) unit *= params_.p;
        unit -= 1;
        auto unit_inv = B.inv(B.from_int(unit));
        for (int64_t i = 0; i <= n; ++i) {
            auto e = bv_coeff(B, E, i, n - i);
            if (B.is_zero(e)) continue;
            BigModRing::Elem c;
            try {
                c = B.divide_by_p_exact(B.neg(e));
            } catch (const precision_error&) {
                throw config_error("inconsistent linear system: input is not a Frobenius series");
            }
            c = B.mul(c, unit_inv);
            bv_set(B, F, i, n - i, c);
        }
    }

    WittScalarRing W(Fq, N);
    auto r = bv_map_coeffs(B, W, F, [&](const BigModRing::Elem& c) { return B.to_witt(W, c); });
    r.total_window = cap;

    // Verify the functional equation, the unit axiom, and the degree-1 shape
    // in the target ring.
    auto Pw = P_.template realize<WittScalarRing>(W, M);
    Pw.window = WINDOW_INF;
    auto rr = r;
    rr.total_window = WINDOW_INF;
    auto lhs = bv_subst_per_variable(W, rr, Pw, cap);
    auto rhs = bv_apply_outer(W, Pw, rr, cap);
    if (!bv_sub(W, lhs, rhs).coeffs.empty())
        throw config_error("inconsistent linear system: group-law check failed");
    for (const auto& [k, c] : r.coeffs)
        if ((k.second == 0 && !(k.first == 1 && c == W.one())) ||
            (k.first == 0 && !(k.second == 1 && c == W.one())))
            throw config_error("group law violates F(X, 0) = X");
    return r;
}

LaurentSeries<EScalarRing> LubinTate::image_of_variable(const EScalarRing& R, const ExactScalar* a,
                                                        int64_t degree_cap) const {
    if (a == nullptr) {
        auto img = P_.template realize<EScalarRing>(R, degree_cap);
        img.window = WINDOW_INF; // polynomial: exact
        return img;
    }
    const unsigned Nw = R.precision_p();
    FqField Fq = params_.make_base_residue_field();
    auto endo = endomorphism(*a, Nw, degree_cap);
    WittScalarRing Wsrc(Fq, Nw);
    WittScalarRing Wdst(params_.make_residue_field(), Nw);
    CoefficientEmbedding sigma(Wsrc, Wdst);
    return lp_map_coeffs(Wsrc, R, endo, [&](const WittScalarRing::Elem& c) {
        return R.from_unramified(sigma.apply(0, c));
    });
}

LaurentSeries<EScalarRing> LubinTate::substitute(const EScalarRing& R,
                                                 const LaurentSeries<EScalarRing>& image,
                                                 int64_t d_img,
                                                 const LaurentSeries<EScalarRing>& s,
                                                 int64_t W_req) const {
    const auto nu = static_cast<int64_t>(R.nilpotency_index());

    // Sound bound for the unknown tail of s: the first unknown exponent k maps
    // to a series whose lowest certified exponent is k itself for k > 0 (the
    // image has lowest exponent 1), and k*d - (nu-1)*(d-1) for k <= 0 (powers
    // of the inverted image dig below k*d through the non-unit head).
    int64_t B = WINDOW_INF;
    if (s.window != WINDOW_INF)
        B = (s.window > 0) ? s.window : s.window * d_img - (nu - 1) * (d_img - 1);
    int64_t cap_eff = std::min(B, W_req);

    int64_t max_pos = 0, max_neg = 0;
    for (const auto& [k, c] : s.coeffs) {
        (void)c;
        if (k > 0) max_pos = std::max(max_pos, k);
        if (k < 0) max_neg = std::max(max_neg, -k);
    }

    LaurentSeries<EScalarRing> inv_img;
    if (max_neg > 0) {
        int64_t W_inv_req = WINDOW_INF;
        if (cap_eff != WINDOW_INF) {
            const int64_t lo1 = -d_img - (nu - 1) * (d_img - 1);
            W_inv_req = cap_eff - (max_neg - 1) * lo1;
        }
        inv_img = lp_invert(R, image, W_inv_req);
    }

    LaurentSeries<EScalarRing> acc;
    // positive powers, cached incrementally
    LaurentSeries<EScalarRing> pw = lp_one(R);
    for (int64_t k = 1; k <= max_pos; ++k) {
        pw = lp_mul(R, pw, image);
        if (cap_eff != WINDOW_INF) pw = lp_truncate(R, pw, cap_eff);
        auto c = lp_coeff(R, s, k);
        if (!R.is_zero(c)) acc = lp_add(R, acc, lp_scalar_mul(R, c, pw));
    }
    // negative powers
    pw = lp_one(R);
    for (int64_t k = 1; k <= max_neg; ++k) {
        pw = lp_mul(R, pw, inv_img);
        auto c = lp_coeff(R, s, -k);
        if (!R.is_zero(c)) acc = lp_add(R, acc, lp_scalar_mul(R, c, pw));
    }
    // constant term: coefficientwise linearity
    auto c0 = lp_coeff(R, s, 0);
    if (!R.is_zero(c0)) acc = lp_add(R, acc, lp_monomial(R, 0, c0));

    acc.window = std::min({acc.window, B, W_req});
    lp_normalize(R, acc);
    return acc;
}

LaurentSeries<EScalarRing> LubinTate::act(const EScalarRing& R, const ExactScalar& a,
                                          const LaurentSeries<EScalarRing>& s,
                                          int64_t W_req) const {
    FqField Fq = params_.make_base_residue_field();
    const bool unit = !a.is_zero_residue(Fq);
    if (!unit) {
        const bool is_p = a.int_part == cpp_int(params_.p) &&
                          std::all_of(a.teich_digits.begin(), a.teich_digits.end(),
                                      [&](const FqField::Elem& d) { return Fq.is_zero(d); });
        if (!is_p) throw config_error("action is defined for units of O_K and for p");
        return act_phi_q(R, s, W_req);
    }
    const int64_t d_img = 1;

    // Determine how much of [a] the computation needs.
    int64_t max_pos = 0, max_neg = 0;
    for (const auto& [k, c] : s.coeffs) {
        (void)c;
        if (k > 0) max_pos = std::max(max_pos, k);
        if (k < 0) max_neg = std::max(max_neg, -k);
    }
    if (max_pos == 0 && max_neg == 0) {
        // constants are fixed; only the window can tighten
        auto r = s;
        r.window = std::min(r.window, W_req);
        lp_normalize(R, r);
        return r;
    }
    int64_t cap_eff = std::min(s.window, W_req); // image lowest exponent is 1
    if (cap_eff == WINDOW_INF)
        throw config_error("action by an endomorphism series requires a finite output window");

    int64_t D_img = std::max<int64_t>(1, cap_eff);
    if (max_neg > 0) {
        const int64_t lo1 = -d_img; // unit-led image: inverse lowest exponent is -1
        int64_t W_inv_req = cap_eff - (max_neg - 1) * lo1;
        D_img = std::max(D_img, W_inv_req + 2 * d_img);
    }
    auto image = image_of_variable(R, &a, D_img);
    return substitute(R, image, d_img, s, W_req);
}

LaurentSeries<EScalarRing> LubinTate::act_phi_q(const EScalarRing& R,
                                                const LaurentSeries<EScalarRing>& s,
                                                int64_t W_req) const {
    auto image = image_of_variable(R, nullptr, 256);
    return substitute(R, image, static_cast<int64_t>(q_), s, W_req);
}

} // namespace ringtower
