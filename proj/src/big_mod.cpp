#include "ringtower/big_mod.hpp"

namespace ringtower {

BigModRing::BigModRing(FqField F, unsigned N) : F_(std::move(F)), N_(N) {
    if (N_ == 0) throw config_error("precision must be positive");
    modulus_ = 1;
    for (unsigned i = 0; i < N_; ++i) modulus_ *= F_.p();
    minpoly_.assign(F_.minpoly().begin(), F_.minpoly().end());
}

cpp_int BigModRing::norm(cpp_int v) const {
    v %= modulus_;
    if (v < 0) v += modulus_;
    return v;
}

BigModRing::Elem BigModRing::one() const {
    Elem r = zero();
    r[0] = 1;
    return r;
}

BigModRing::Elem BigModRing::from_int(const cpp_int& v) const {
    Elem r = zero();
    r[0] = norm(v);
    return r;
}

bool BigModRing::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (norm(c) != 0) return false;
    return true;
}

BigModRing::Elem BigModRing::add(const Elem& a, const Elem& b) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = norm(a[i] + b[i]);
    return r;
}

BigModRing::Elem BigModRing::sub(const Elem& a, const Elem& b) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = norm(a[i] - b[i]);
    return r;
}

BigModRing::Elem BigModRing::neg(const Elem& a) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = norm(-a[i]);
    return r;
}

std::vector<cpp_int> BigModRing::poly_mul_reduce(const Elem& a, const Elem& b) const {
    const unsigned d = degree();
    std::vector<cpp_int> prod(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    // reduce modulo the monic minimal polynomial
    for (unsigned k = 2 * d - 2; k >= d && k < prod.size(); --k) {
        if (prod[k] == 0) continue;
        cpp_int c = prod[k];
        prod[k] = 0;
        for (unsigned j = 0; j < d; ++j)
            prod[k - d + j] -= c * cpp_int(minpoly_[j]);
    }
    prod.resize(d);
    for (auto& c : prod) c = norm(c);
    return prod;
}

BigModRing::Elem BigModRing::mul(const Elem& a, const Elem& b) const {
    if (degree() == 1) {
        Elem r(1);
        r[0] = norm(a[0] * b[0]);
        return r;
    }
    return poly_mul_reduce(a, b);
}

BigModRing::Elem BigModRing::pow(Elem base, cpp_int n) const {
    Elem r = one();
    while (n > 0) {
        if ((n & 1) != 0) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

FqField::Elem BigModRing::reduce_mod_p(const Elem& a) const {
    FqField::Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i)
        r[i] = static_cast<uint64_t>(a[i] % F_.p());
    return r;
}

BigModRing::Elem BigModRing::inv(const Elem& a) const {
    auto res = reduce_mod_p(a);
    if (F_.is_zero(res)) throw not_invertible("element is divisible by p");
    auto res_inv = F_.inv(res);
    Elem x = zero();
    for (unsigned i = 0; i < degree(); ++i) x[i] = res_inv[i];
    // Hensel: x <- x (2 - a x), doubling p-adic accuracy each step
    unsigned steps = 1;
    while ((1u << steps) < N_) ++steps;
    for (unsigned s = 0; s <= steps + 1; ++s) {
        Elem t = mul(a, x);
        Elem two_minus = sub(add(one(), one()), t);
        x = mul(x, two_minus);
    }
    if (!is_zero(sub(mul(a, x), one())))
        throw precision_error("inversion failed to converge");
    return x;
}

BigModRing::Elem BigModRing::teichmuller(const FqField::Elem& lambda) const {
    Elem t = zero();
    for (unsigned i = 0; i < degree(); ++i) t[i] = lambda[i];
    for (unsigned it = 0; it + 1 < N_; ++it) t = pow(t, cpp_int(F_.size()));
    return t;
}

BigModRing::Elem BigModRing::divide_by_p_exact(const Elem& a) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) {
        if (a[i] % F_.p() != 0)
            throw precision_error("element is not divisible by p");
        r[i] = a[i] / F_.p();
    }
    return r;
}

WittScalarRing::Elem BigModRing::to_witt(const WittScalarRing& W, const Elem& a) const {
    if (W.residue_field().minpoly() != F_.minpoly() || W.residue_field().p() != F_.p())
        throw config_error("target ring has a different residue field");
    WittScalarRing::Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i)
        r[i] = static_cast<uint64_t>(a[i] % cpp_int(W.modulus()));
    return r;
}

std::string BigModRing::to_string(const Elem& a) const {
    std::string s = "(";
    for (unsigned i = 0; i < degree(); ++i) {
        if (i) s += " + ";
        s += a[i].str();
        if (i == 1) s += "*w";
        if (i > 1) s += "*w^" + std::to_string(i);
    }
    return s + ")";
}

} // namespace ringtower
