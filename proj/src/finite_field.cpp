#include "ringtower/finite_field.hpp"

#include <algorithm>

#include "ringtower/util.hpp"

namespace ringtower {

namespace {

// Dense polynomial helpers over F_p (little-endian coefficient vectors),
// used only for validating defining polynomials.
using Poly = std::vector<uint64_t>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& g, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce by monic g
    const size_t dg = g.size() - 1;
    for (size_t i = r.size(); i-- > dg;) {
        uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < dg; ++j)
            r[i - dg + j] = (r[i - dg + j] + (p - g[j] % p) * c) % p;
    }
    r.resize(dg);
    return poly_trim(r);
}

Poly poly_pow_mod(Poly base, uint64_t e, const Poly& g, uint64_t p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, g, p);
        base = poly_mul_mod(base, base, g, p);
        e >>= 1;
    }
    return r;
}

Poly poly_rem(Poly a, const Poly& b, uint64_t p) { // remainder of a by nonzero b
    const uint64_t lead_inv = mod_pow(b.back(), p - 2, p);
    a = poly_trim(std::move(a));
    while (a.size() >= b.size()) {
        const uint64_t c = (a.back() * lead_inv) % p;
        const size_t shift = a.size() - b.size();
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + p - (b[j] * c) % p) % p;
        a.pop_back(); // leading coefficient cancelled exactly
        a = poly_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Rabin irreducibility: monic g of degree d over F_p is irreducible iff
// x^{p^d} = x mod g and gcd(x^{p^{d/r}} - x, g) = 1 for every prime r | d.
bool is_irreducible(const Poly& g, uint64_t p) {
    const unsigned d = unsigned(g.size() - 1);
    if (d == 0) return false;
    Poly x = {0, 1};
    uint64_t pd = 1;
    for (unsigned i = 0; i < d; ++i) pd *= p;
    Poly xq = poly_pow_mod(x, pd, g, p);
    if (poly_trim(xq) != poly_trim(x)) return false;
    for (unsigned r = 2; r <= d; ++r) {
        if (d % r != 0 || !is_prime_u64(r)) continue;
        uint64_t e = 1;
        for (unsigned i = 0; i < d / r; ++i) e *= p;
        Poly xe = poly_pow_mod(x, e, g, p);
        // xe - x
        Poly diff = xe;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        Poly gg = poly_gcd(g, poly_trim(std::move(diff)), p);
        if (gg.size() > 1) return false;
    }
    return true;
}

} // namespace

std::vector<uint64_t> FqField::default_minpoly(uint64_t p, unsigned d) {
    // Hand-checked irreducible polynomials for the shipped parameter range.
    if (d == 1) return {0, 1}; // w  (the field is F_p itself)
    if (p == 2) {
        if (d == 2) return {1, 1, 1};    // w^2 + w + 1
        if (d == 3) return {1, 1, 0, 1}; // w^3 + w + 1
    } else if (p == 3) {
        if (d == 2) return {1, 0, 1};    // w^2 + 1
        if (d == 3) return {1, 2, 0, 1}; // w^3 + 2w + 1
    } else if (p == 5) {
        if (d == 2) return {2, 0, 1};    // w^2 + 2
        if (d == 3) return {1, 1, 0, 1}; // w^3 + w + 1
    }
    throw config_error("no default defining polynomial for p=" + std::to_string(p) +
                       ", degree " + std::to_string(d) +
                       "; supply one explicitly");
}

FqField::FqField(uint64_t p, unsigned d)
    : p_(p), d_(d), minpoly_(default_minpoly(p, d)) {
    validate_and_init();
}

FqField::FqField(uint64_t p, const std::vector<uint64_t>& minpoly, unsigned d)
    : p_(p), d_(d), minpoly_(minpoly) {
    validate_and_init();
}

void FqField::validate_and_init() {
    if (!is_prime_u64(p_)) throw config_error("p must be prime, got " + std::to_string(p_));
    if (d_ == 0) throw config_error("field degree must be >= 1");
    if (minpoly_.size() != size_t(d_) + 1)
        throw config_error("defining polynomial must have length degree+1");
    for (auto& c : minpoly_) c %= p_;
    if (minpoly_.back() != 1) throw config_error("defining polynomial must be monic");
    size_ = checked_pow_u64(p_, d_);
    if (d_ > 1 && !is_irreducible(minpoly_, p_))
        throw config_error("defining polynomial is reducible over F_" + std::to_string(p_));
}

FqField::Elem FqField::one() const {
    Elem e(d_, 0);
    e[0] = 1;
    return e;
}

FqField::Elem FqField::gen() const {
    Elem e(d_, 0);
    if (d_ == 1)
        e[0] = 1; // F_p has no transcendental generator; the class of w is determined by w = -minpoly_[0]
    else
        e[1] = 1;
    if (d_ == 1) e[0] = (p_ - minpoly_[0] % p_) % p_;
    return e;
}

FqField::Elem FqField::from_int(uint64_t c) const {
    Elem e(d_, 0);
    e[0] = c % p_;
    return e;
}

bool FqField::is_zero(const Elem& a) const {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

bool FqField::is_one(const Elem& a) const {
    if (a[0] != 1) return false;
    for (unsigned i = 1; i < d_; ++i)
        if (a[i] != 0) return false;
    return true;
}

FqField::Elem FqField::add(const Elem& a, const Elem& b) const {
    Elem r(d_);
    for (unsigned i = 0; i < d_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

FqField::Elem FqField::sub(const Elem& a, const Elem& b) const {
    Elem r(d_);
    for (unsigned i = 0; i < d_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
    return r;
}

FqField::Elem FqField::neg(const Elem& a) const {
    Elem r(d_);
    for (unsigned i = 0; i < d_; ++i) r[i] = (p_ - a[i]) % p_;
    return r;
}

FqField::Elem FqField::mul(const Elem& a, const Elem& b) const {
    std::vector<uint64_t> r(2 * d_ - 1, 0);
    for (unsigned i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < d_; ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    }
    for (size_t i = r.size(); i-- > d_;) {
        uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (unsigned j = 0; j < d_; ++j)
            r[i - d_ + j] = (r[i - d_ + j] + (p_ - minpoly_[j]) * c) % p_;
    }
    r.resize(d_);
    return r;
}

FqField::Elem FqField::pow(const Elem& a, uint64_t e) const {
    Elem r = one();
    Elem base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FqField::Elem FqField::inv(const Elem& a) const {
    if (is_zero(a)) throw not_invertible("zero is not invertible in F_" + std::to_string(size_));
    return pow(a, size_ - 2);
}

FqField::Elem FqField::frobenius_pow(const Elem& a, unsigned i) const {
    Elem r = a;
    for (unsigned k = 0; k < i % d_; ++k) r = frobenius(r);
    return r;
}

FqField::Elem FqField::pth_root(const Elem& a) const { return frobenius_pow(a, d_ - 1); }

uint64_t FqField::encode(const Elem& a) const {
    uint64_t code = 0, w = 1;
    for (unsigned i = 0; i < d_; ++i) {
        code += a[i] * w;
        w *= p_;
    }
    return code;
}

FqField::Elem FqField::decode(uint64_t code) const {
    Elem e(d_);
    for (unsigned i = 0; i < d_; ++i) {
        e[i] = code % p_;
        code /= p_;
    }
    return e;
}

FqField::Elem FqField::multiplicative_generator() const {
    const uint64_t n = size_ - 1;
    std::vector<uint64_t> prime_factors;
    uint64_t m = n;
    for (uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (uint64_t code = 1; code < size_; ++code) {
        Elem cand = decode(code);
        bool ok = true;
        for (uint64_t r : prime_factors) {
            if (is_one(pow(cand, n / r))) {
                ok = false;
                break;
            }
        }
        if (ok) return cand;
    }
    throw precision_error("no multiplicative generator found (unreachable for valid fields)");
}

std::string FqField::to_string(const Elem& a, const std::string& var) const {
    std::string out;
    for (unsigned i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(a[i]);
        } else {
            out += std::to_string(a[i]) + "*" + var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

std::string FqField::poly_to_string(const std::string& var) const {
    std::string out;
    for (size_t i = minpoly_.size(); i-- > 0;) {
        if (minpoly_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(minpoly_[i]);
        } else {
            if (minpoly_[i] != 1) out += std::to_string(minpoly_[i]) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

SubfieldEmbedding::SubfieldEmbedding(const FqField& sub, const FqField& big)
    : sub_(sub), big_(big) {
    if (sub.p() != big.p() || big.degree() % sub.degree() != 0)
        throw config_error("no embedding: source degree must divide target degree over the same prime");
    // Find the smallest root (encode order) of the source polynomial in the target.
    FqField::Elem root;
    bool found = false;
    for (uint64_t code = 0; code < big.size(); ++code) {
        FqField::Elem cand = big.decode(code);
        // Evaluate the source minimal polynomial at cand via Horner.
        FqField::Elem acc = big.zero();
        const auto& mp = sub.minpoly();
        for (size_t i = mp.size(); i-- > 0;) {
            acc = big.mul(acc, cand);
            acc = big.add(acc, big.from_int(mp[i]));
        }
        if (big.is_zero(acc)) {
            root = cand;
            found = true;
            break;
        }
    }
    if (!found)
        throw config_error("defining polynomial of the subfield has no root in the target field");
    gen_powers_.resize(sub.degree());
    FqField::Elem pw = big.one();
    for (unsigned j = 0; j < sub.degree(); ++j) {
        gen_powers_[j] = pw;
        pw = big.mul(pw, root);
    }
}

FqField::Elem SubfieldEmbedding::apply(const FqField::Elem& a) const {
    FqField::Elem r = big_.zero();
    for (unsigned j = 0; j < sub_.degree(); ++j) {
        if (a[j] == 0) continue;
        FqField::Elem term = gen_powers_[j];
        for (auto& c : term) c = (c * a[j]) % big_.p();
        r = big_.add(r, term);
    }
    return r;
}

} // namespace ringtower
