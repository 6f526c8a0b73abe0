#pragma once

// Sparse Laurent series with a certified-knowledge window.
//
// A series value represents the class of all true series that agree with the
// stored coefficients on every exponent strictly below `window`; exponents at
// or above the window are unknown.  `window == WINDOW_INF` means the value is
// exact.  Every operation computes the largest window it can certify for its
// result from the windows of its inputs, so precision claims are sound by
// construction rather than tracked by convention.
//
// The coefficient ring is supplied explicitly to every operation (matching the
// scalar-ring layer).  It must provide:
//   Elem, zero(), one(), is_zero(), add(), sub(), neg(), mul(), is_unit(),
//   inv(), nilpotency_index()
// where nilpotency_index() is the smallest n with (non-unit)^n == 0 — the
// uniformizer precision for the truncated local rings, 1 for a field.

#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringtower/errors.hpp"

namespace ringtower {

inline constexpr int64_t WINDOW_INF = std::numeric_limits<int64_t>::max();

template <typename Ring>
struct LaurentSeries {
    std::map<int64_t, typename Ring::Elem> coeffs;
    int64_t window = WINDOW_INF;

    bool operator==(const LaurentSeries&) const = default;
};

template <typename Ring>
void lp_normalize(const Ring& R, LaurentSeries<Ring>& s) {
    for (auto it = s.coeffs.begin(); it != s.coeffs.end();) {
        if (it->first >= s.window || R.is_zero(it->second))
            it = s.coeffs.erase(it);
        else
            ++it;
    }
}

template <typename Ring>
LaurentSeries<Ring> lp_zero(const Ring&) {
    return {};
}

template <typename Ring>
LaurentSeries<Ring> lp_one(const Ring& R) {
    LaurentSeries<Ring> s;
    s.coeffs[0] = R.one();
    return s;
}

template <typename Ring>
LaurentSeries<Ring> lp_monomial(const Ring& R, int64_t exp, typename Ring::Elem c) {
    LaurentSeries<Ring> s;
    if (!R.is_zero(c)) s.coeffs[exp] = std::move(c);
    return s;
}

template <typename Ring>
bool lp_is_zero(const LaurentSeries<Ring>& s) {
    return s.coeffs.empty();
}

// Lowest stored exponent; `fallback` (typically the window) when no term is stored.
template <typename Ring>
int64_t lp_low(const LaurentSeries<Ring>& s, int64_t fallback) {
    return s.coeffs.empty() ? fallback : s.coeffs.begin()->first;
}

template <typename Ring>
int64_t lp_high(const LaurentSeries<Ring>& s, int64_t fallback) {
    return s.coeffs.empty() ? fallback : s.coeffs.rbegin()->first;
}

template <typename Ring>
typename Ring::Elem lp_coeff(const Ring& R, const LaurentSeries<Ring>& s, int64_t exp) {
    auto it = s.coeffs.find(exp);
    return it == s.coeffs.end() ? R.zero() : it->second;
}

// Restrict certification to exponents < W (never widens).
template <typename Ring>
LaurentSeries<Ring> lp_truncate(const Ring& R, LaurentSeries<Ring> s, int64_t W) {
    if (W < s.window) s.window = W;
    lp_normalize(R, s);
    return s;
}

template <typename Ring>
LaurentSeries<Ring> lp_add(const Ring& R, const LaurentSeries<Ring>& a, const LaurentSeries<Ring>& b) {
    LaurentSeries<Ring> r;
    r.window = std::min(a.window, b.window);
    r.coeffs = a.coeffs;
    for (const auto& [e, c] : b.coeffs) {
        auto it = r.coeffs.find(e);
        if (it == r.coeffs.end())
            r.coeffs[e] = c;
        else
            it->second = R.add(it->second, c);
    }
    lp_normalize(R, r);
    return r;
}

template <typename Ring>
LaurentSeries<Ring> lp_neg(const Ring& R, LaurentSeries<Ring> a) {
    for (auto& [e, c] : a.coeffs) c = R.neg(c);
    return a;
}

template <typename Ring>
LaurentSeries<Ring> lp_sub(const Ring& R, const LaurentSeries<Ring>& a, const LaurentSeries<Ring>& b) {
    return lp_add(R, a, lp_neg(R, b));
}

template <typename Ring>
LaurentSeries<Ring> lp_scalar_mul(const Ring& R, const typename Ring::Elem& c, LaurentSeries<Ring> a) {
    for (auto& [e, v] : a.coeffs) v = R.mul(c, v);
    lp_normalize(R, a);
    return a;
}

// Shift every exponent by k.
template <typename Ring>
LaurentSeries<Ring> lp_shift(const Ring&, const LaurentSeries<Ring>& a, int64_t k) {
    LaurentSeries<Ring> r;
    r.window = (a.window == WINDOW_INF) ? WINDOW_INF : a.window + k;
    for (const auto& [e, c] : a.coeffs) r.coeffs[e + k] = c;
    return r;
}

// Substitute T -> T^k for k >= 1.
template <typename Ring>
LaurentSeries<Ring> lp_stretch(const Ring&, const LaurentSeries<Ring>& a, int64_t k) {
    LaurentSeries<Ring> r;
    r.window = (a.window == WINDOW_INF) ? WINDOW_INF : a.window * k;
    for (const auto& [e, c] : a.coeffs) r.coeffs[e * k] = c;
    return r;
}

template <typename Ring>
LaurentSeries<Ring> lp_mul(const Ring& R, const LaurentSeries<Ring>& a, const LaurentSeries<Ring>& b) {
    LaurentSeries<Ring> r;
    // Unknown tail of one factor first interacts at (window of that factor) +
    // (lowest exponent of the other); an empty factor contributes nothing known
    // below its own window either.
    int64_t wa = WINDOW_INF, wb = WINDOW_INF;
    if (a.window != WINDOW_INF) wa = (b.coeffs.empty() && b.window == WINDOW_INF) ? WINDOW_INF
                                                                                  : a.window + lp_low(b, b.window);
    if (b.window != WINDOW_INF) wb = (a.coeffs.empty() && a.window == WINDOW_INF) ? WINDOW_INF
                                                                                  : b.window + lp_low(a, a.window);
    r.window = std::min(wa, wb);
    for (const auto& [ea, ca] : a.coeffs)
        for (const auto& [eb, cb] : b.coeffs) {
            int64_t e = ea + eb;
            if (e >= r.window) continue;
            auto prod = R.mul(ca, cb);
            auto it = r.coeffs.find(e);
            if (it == r.coeffs.end())
                r.coeffs[e] = std::move(prod);
            else
                it->second = R.add(it->second, prod);
        }
    lp_normalize(R, r);
    return r;
}

template <typename Ring>
LaurentSeries<Ring> lp_pow(const Ring& R, LaurentSeries<Ring> base, uint64_t n) {
    LaurentSeries<Ring> r = lp_one(R);
    while (n) {
        if (n & 1) r = lp_mul(R, r, base);
        n >>= 1;
        if (n) base = lp_mul(R, base, base);
    }
    return r;
}

// True iff a and b agree everywhere below min(window a, window b, W).
template <typename Ring>
bool lp_agree(const Ring& R, const LaurentSeries<Ring>& a, const LaurentSeries<Ring>& b,
              int64_t W = WINDOW_INF) {
    int64_t lim = std::min({a.window, b.window, W});
    for (const auto& [e, c] : a.coeffs)
        if (e < lim && !(lp_coeff(R, b, e) == c)) return false;
    for (const auto& [e, c] : b.coeffs)
        if (e < lim && !(lp_coeff(R, a, e) == c)) return false;
    return true;
}

// Multiplicative inverse.
//
// Factor s = c_d T^d (1 + z) at the lowest exponent d carrying a unit
// coefficient.  Every stored coefficient below d is then a non-unit, so the
// negative-exponent part of z is topologically nilpotent: its nu-th power
// vanishes, where nu = nilpotency_index().  The geometric series for
// (1 + z)^{-1} therefore terminates once products either vanish or leave the
// computation window.
//
// Certified output window:  W_in - 2d - (nu - 1) * (d - low),
// where the (nu-1)*(d-low) term is the depth the surviving geometric terms can
// reach below the unit monomial, and the 2d accounts for recentring at T^d and
// the final shift by T^{-d}.  `W_req` caps the computation; it is required when
// the input is exact but has terms above T^d (the true inverse is then an
// infinite series).
template <typename Ring>
LaurentSeries<Ring> lp_invert(const Ring& R, const LaurentSeries<Ring>& s,
                              int64_t W_req = WINDOW_INF) {
    // Locate the unit-led monomial.
    int64_t d = 0;
    bool found = false;
    for (const auto& [e, c] : s.coeffs)
        if (R.is_unit(c)) {
            d = e;
            found = true;
            break;
        }
    if (!found) throw not_invertible("series has no unit coefficient below its window");

    const int64_t low = s.coeffs.begin()->first;
    const int64_t delta = d - low; // depth of the non-unit head below the unit monomial
    const auto nu = static_cast<int64_t>(R.nilpotency_index());

    int64_t W_out = s.window;
    if (W_out != WINDOW_INF) W_out = W_out - 2 * d - (nu - 1) * delta;
    if (W_req != WINDOW_INF) W_out = std::min(W_out, W_req);

    // z = s / (c_d T^d) - 1, computed below the recentred window.
    const auto cd_inv = R.inv(s.coeffs.at(d));
    LaurentSeries<Ring> z;
    z.window = (s.window == WINDOW_INF) ? WINDOW_INF : s.window - d;
    for (const auto& [e, c] : s.coeffs)
        if (e != d) z.coeffs[e - d] = R.mul(cd_inv, c);

    bool has_positive_tail = !z.coeffs.empty() && z.coeffs.rbegin()->first > 0;
    if (W_out == WINDOW_INF && has_positive_tail)
        throw config_error("inverse of an exact series with terms above its unit monomial "
                           "is an infinite series; a finite window is required");

    // Computation cap in the recentred coordinates (result will be shifted by
    // -d).  Intermediate products keep (nu-1)*delta of headroom above the
    // certified cap: a coefficient that many steps above it can still descend
    // below it through later factors from the non-unit head, each of which
    // lowers the exponent by at most delta while adding a uniformizer power.
    const int64_t cap = (W_out == WINDOW_INF) ? WINDOW_INF : W_out + d;
    const int64_t cap_comp = (cap == WINDOW_INF) ? WINDOW_INF : cap + (nu - 1) * delta;

    LaurentSeries<Ring> acc = lp_one(R);
    LaurentSeries<Ring> pw = lp_one(R);
    LaurentSeries<Ring> mz = lp_neg(R, z);
    // Window bookkeeping is finalized below from the derivation; run the loop on
    // exact-marked copies so intermediate windows do not spuriously shrink.
    mz.window = WINDOW_INF;
    pw.window = WINDOW_INF;
    acc.window = WINDOW_INF;
    int64_t guard = 4 * (nu + 1) * (delta + 1) +
                    4 * (cap_comp == WINDOW_INF ? 1 : std::max<int64_t>(1, cap_comp - low)) + 64;
    while (!pw.coeffs.empty()) {
        if (--guard < 0) throw precision_error("geometric inversion failed to terminate");
        pw = lp_mul(R, pw, mz);
        if (cap_comp != WINDOW_INF) pw = lp_truncate(R, pw, cap_comp);
        pw.window = WINDOW_INF;
        acc = lp_add(R, acc, pw);
    }

    LaurentSeries<Ring> r = lp_scalar_mul(R, cd_inv, lp_shift(R, acc, -d));
    r.window = W_out;
    lp_normalize(R, r);

    // Hard post-check: s * r == 1 on the certified window.
    auto check = lp_mul(R, s, r);
    if (!lp_agree(R, check, lp_one(R), W_out))
        throw precision_error("inverse failed verification against its certified window");
    return r;
}

// Substitute g into f (f a series in T with known coefficients below f.window).
// Requires low(g) >= 1 so the substitution converges coefficientwise.
template <typename Ring>
LaurentSeries<Ring> lp_compose(const Ring& R, const LaurentSeries<Ring>& f,
                               const LaurentSeries<Ring>& g) {
    int64_t low_g = lp_low(g, g.window);
    if (!g.coeffs.empty() && low_g < 1)
        throw config_error("composition requires the inner series to vanish at the origin");
    if (low_g < 1) low_g = 1; // empty g: treat as order >= 1

    int64_t W_out = g.window;
    if (f.window != WINDOW_INF) {
        int64_t from_f = f.window * low_g;
        W_out = std::min(W_out, from_f);
    }

    // Horner evaluation over descending exponents (f must be a plain power
    // series: no negative exponents).
    if (!f.coeffs.empty() && f.coeffs.begin()->first < 0)
        throw config_error("composition target must have no negative exponents");

    LaurentSeries<Ring> acc; // exact zero
    std::vector<std::pair<int64_t, typename Ring::Elem>> terms(f.coeffs.begin(), f.coeffs.end());
    int64_t prev_exp = -1;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (prev_exp >= 0) {
            int64_t gap = prev_exp - it->first;
            for (int64_t k = 0; k < gap; ++k) {
                acc = lp_mul(R, acc, g);
                if (W_out != WINDOW_INF) acc = lp_truncate(R, acc, W_out);
                acc.window = WINDOW_INF;
            }
        }
        acc = lp_add(R, acc, lp_monomial(R, 0, it->second));
        prev_exp = it->first;
    }
    if (prev_exp > 0) {
        for (int64_t k = 0; k < prev_exp; ++k) {
            acc = lp_mul(R, acc, g);
            if (W_out != WINDOW_INF) acc = lp_truncate(R, acc, W_out);
            acc.window = WINDOW_INF;
        }
    }
    acc.window = W_out;
    lp_normalize(R, acc);
    return acc;
}

// Map coefficients into another ring (e.g. residue reduction or lifting).
template <typename RingA, typename RingB, typename Fn>
LaurentSeries<RingB> lp_map_coeffs(const RingA&, const RingB& RB, const LaurentSeries<RingA>& s,
                                   Fn&& f) {
    LaurentSeries<RingB> r;
    r.window = s.window;
    for (const auto& [e, c] : s.coeffs) {
        auto v = f(c);
        if (!RB.is_zero(v)) r.coeffs[e] = std::move(v);
    }
    return r;
}

template <typename Ring>
std::string lp_to_string(const Ring& R, const LaurentSeries<Ring>& s,
                         const std::string& var = "T") {
    std::ostringstream os;
    if (s.coeffs.empty())
        os << "0";
    else {
        bool first = true;
        for (const auto& [e, c] : s.coeffs) {
            if (!first) os << " + ";
            first = false;
            os << R.to_string(c);
            if (e != 0) os << "*" << var << "^" << e;
        }
    }
    if (s.window != WINDOW_INF) os << " + O(" << var << "^" << s.window << ")";
    return os.str();
}

} // namespace ringtower
