#pragma once

// Frobenius power series, the endomorphism series [a] of the associated formal
// group, the group law itself, and the induced action on Laurent series with
// coefficients in the (possibly ramified) scalar ring.
//
// Coefficient solving runs over an arbitrary-precision model of W(F_q): each
// new degree costs one exact division by p, so the solver works at elevated
// internal precision and converts down, then re-verifies the defining
// commutation relation in the target ring.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ringtower/big_mod.hpp"
#include "ringtower/field_params.hpp"
#include "ringtower/laurent.hpp"
#include "ringtower/padic_scalar.hpp"

namespace ringtower {

// An exactly-specified element of W(F_q): an integer plus a finite Teichmuller
// digit expansion sum_i p^i [lambda_i].  Realizable at any precision, which is
// what the elevated-precision solvers need.
struct ExactScalar {
    cpp_int int_part = 0;
    std::vector<FqField::Elem> teich_digits; // digit i scales p^i

    static ExactScalar from_int(cpp_int v) {
        ExactScalar s;
        s.int_part = std::move(v);
        return s;
    }
    static ExactScalar teichmuller(const FqField::Elem& lambda) {
        ExactScalar s;
        s.teich_digits.push_back(lambda);
        return s;
    }

    BigModRing::Elem realize(const BigModRing& R) const;
    WittScalarRing::Elem realize(const WittScalarRing& W) const;
    bool is_zero_residue(const FqField& F) const;
    FqField::Elem residue(const FqField& F) const;
};

// Capture an arbitrary ring element as an ExactScalar by peeling Teichmuller
// digits; exact for the class of x modulo p^{digit count}.
ExactScalar exact_from_digits(const BigModRing& R, const BigModRing::Elem& x, unsigned count);

// A Frobenius power series with rational-integer coefficients:
// constant term 0, linear coefficient exactly p, congruent to T^q mod p.
struct FrobeniusSeries {
    std::map<int64_t, int64_t> coeffs; // exponent -> coefficient

    static FrobeniusSeries standard(uint64_t p, uint64_t q);
    void validate(uint64_t p, uint64_t q) const;

    template <typename Ring>
    LaurentSeries<Ring> realize(const Ring& R, int64_t degree_cap) const {
        LaurentSeries<Ring> s;
        s.window = degree_cap + 1;
        for (const auto& [e, c] : coeffs) {
            if (e > degree_cap) continue;
            auto v = R.from_int(c);
            if (!R.is_zero(v)) s.coeffs[e] = v;
        }
        return s;
    }
};

// Two-variable truncated series; coefficients below total degree total_window
// are certified.
template <typename Ring>
struct Bivariate {
    std::map<std::pair<int64_t, int64_t>, typename Ring::Elem> coeffs;
    int64_t total_window = WINDOW_INF;
};

template <typename Ring>
typename Ring::Elem bv_coeff(const Ring& R, const Bivariate<Ring>& F, int64_t i, int64_t j) {
    auto it = F.coeffs.find({i, j});
    return it == F.coeffs.end() ? R.zero() : it->second;
}

template <typename Ring>
void bv_set(const Ring& R, Bivariate<Ring>& F, int64_t i, int64_t j, typename Ring::Elem c) {
    if (R.is_zero(c))
        F.coeffs.erase({i, j});
    else
        F.coeffs[{i, j}] = std::move(c);
}

template <typename Ring>
Bivariate<Ring> bv_add(const Ring& R, const Bivariate<Ring>& a, const Bivariate<Ring>& b) {
    Bivariate<Ring> r = a;
    r.total_window = std::min(a.total_window, b.total_window);
    for (const auto& [k, c] : b.coeffs) {
        auto it = r.coeffs.find(k);
        if (it == r.coeffs.end())
            r.coeffs[k] = c;
        else {
            it->second = R.add(it->second, c);
            if (R.is_zero(it->second)) r.coeffs.erase(it);
        }
    }
    return r;
}

template <typename Ring>
Bivariate<Ring> bv_sub(const Ring& R, const Bivariate<Ring>& a, const Bivariate<Ring>& b) {
    Bivariate<Ring> nb = b;
    for (auto& [k, c] : nb.coeffs) c = R.neg(c);
    return bv_add(R, a, nb);
}

template <typename Ring>
Bivariate<Ring> bv_mul(const Ring& R, const Bivariate<Ring>& a, const Bivariate<Ring>& b,
                       int64_t cap) {
    Bivariate<Ring> r;
    r.total_window = std::min({a.total_window, b.total_window, cap});
    for (const auto& [ka, ca] : a.coeffs)
        for (const auto& [kb, cb] : b.coeffs) {
            int64_t i = ka.first + kb.first, j = ka.second + kb.second;
            if (i + j >= r.total_window) continue;
            auto prod = R.mul(ca, cb);
            auto it = r.coeffs.find({i, j});
            if (it == r.coeffs.end())
                r.coeffs[{i, j}] = std::move(prod);
            else
                it->second = R.add(it->second, prod);
        }
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = R.is_zero(it->second) ? r.coeffs.erase(it) : std::next(it);
    return r;
}

// Substitute the same-variable series u for X and v for Y: the result is a
// univariate series.
template <typename Ring>
LaurentSeries<Ring> bv_subst_pair(const Ring& R, const Bivariate<Ring>& F,
                                  const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& v,
                                  int64_t cap) {
    int64_t max_i = 0, max_j = 0;
    for (const auto& [k, c] : F.coeffs) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    std::vector<LaurentSeries<Ring>> up(max_i + 1), vp(max_j + 1);
    up[0] = lp_one(R);
    vp[0] = lp_one(R);
    for (int64_t i = 1; i <= max_i; ++i) up[i] = lp_truncate(R, lp_mul(R, up[i - 1], u), cap);
    for (int64_t j = 1; j <= max_j; ++j) vp[j] = lp_truncate(R, lp_mul(R, vp[j - 1], v), cap);
    LaurentSeries<Ring> acc;
    for (const auto& [k, c] : F.coeffs) {
        auto term = lp_scalar_mul(R, c, lp_mul(R, up[k.first], vp[k.second]));
        acc = lp_add(R, acc, term);
    }
    acc = lp_truncate(R, acc, std::min(cap, F.total_window));
    return acc;
}

template <typename RingA, typename RingB, typename Fn>
Bivariate<RingB> bv_map_coeffs(const RingA&, const RingB& RB, const Bivariate<RingA>& F, Fn&& f) {
    Bivariate<RingB> r;
    r.total_window = F.total_window;
    for (const auto& [k, c] : F.coeffs) {
        auto v = f(c);
        if (!RB.is_zero(v)) r.coeffs[k] = std::move(v);
    }
    return r;
}

class LubinTate {
  public:
    // Uses the standard Frobenius series pT + T^q unless one is supplied.
    explicit LubinTate(FieldParams params, std::optional<FrobeniusSeries> custom = std::nullopt);

    const FieldParams& params() const { return params_; }
    const FrobeniusSeries& frobenius_series() const { return P_; }
    uint64_t q() const { return q_; }

    // [a](T) over W(F_q)/p^N through degree M (window M+1).
    LaurentSeries<WittScalarRing> endomorphism(const ExactScalar& a, unsigned N, int64_t M) const;

    // The group law F(X, Y) over W(F_q)/p^N through total degree M.
    Bivariate<WittScalarRing> formal_group(unsigned N, int64_t M) const;

    // Action on Laurent series over the full scalar ring: T -> image(T), where
    // image is [a](T) for a unit (or any a in O_K) embedded through sigma_0,
    // and p_LT(T) for the Frobenius-power action.  Negative exponents go
    // through certified inversion of the image; W_req caps the output window.
    LaurentSeries<EScalarRing> act(const EScalarRing& R, const ExactScalar& a,
                                   const LaurentSeries<EScalarRing>& s,
                                   int64_t W_req = WINDOW_INF) const;
    LaurentSeries<EScalarRing> act_phi_q(const EScalarRing& R, const LaurentSeries<EScalarRing>& s,
                                         int64_t W_req = WINDOW_INF) const;

  private:
    FieldParams params_;
    FrobeniusSeries P_;
    uint64_t q_;

    LaurentSeries<EScalarRing> substitute(const EScalarRing& R,
                                          const LaurentSeries<EScalarRing>& image, int64_t d_img,
                                          const LaurentSeries<EScalarRing>& s,
                                          int64_t W_req) const;
    LaurentSeries<EScalarRing> image_of_variable(const EScalarRing& R, const ExactScalar* a,
                                                 int64_t degree_cap) const;
};

} // namespace ringtower
