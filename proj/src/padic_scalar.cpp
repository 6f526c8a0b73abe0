#include "ringtower/padic_scalar.hpp"

#include <algorithm>

#include "ringtower/util.hpp"

namespace ringtower {

WittScalarRing::WittScalarRing(FqField residue_field, unsigned N)
    : F_(std::move(residue_field)), N_(N) {
    if (N_ == 0) throw config_error("precision must be >= 1");
    p_ = F_.p();
    modulus_ = checked_pow_u64(p_, N_);
    lift_minpoly_ = F_.minpoly(); // canonical lift: same small coefficients
}

WittScalarRing::Elem WittScalarRing::one() const {
    Elem e(degree(), 0);
    e[0] = 1 % modulus_;
    return e;
}

WittScalarRing::Elem WittScalarRing::from_int(int64_t c) const {
    Elem e(degree(), 0);
    int64_t m = int64_t(modulus_);
    e[0] = uint64_t(((c % m) + m) % m);
    return e;
}

bool WittScalarRing::is_zero(const Elem& a) const {
    for (auto c : a)
        if (c % modulus_ != 0) return false;
    return true;
}

WittScalarRing::Elem WittScalarRing::add(const Elem& a, const Elem& b) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = (a[i] + b[i]) % modulus_;
    return r;
}

WittScalarRing::Elem WittScalarRing::sub(const Elem& a, const Elem& b) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = (a[i] + modulus_ - b[i] % modulus_) % modulus_;
    return r;
}

WittScalarRing::Elem WittScalarRing::neg(const Elem& a) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = (modulus_ - a[i] % modulus_) % modulus_;
    return r;
}

WittScalarRing::Elem WittScalarRing::mul(const Elem& a, const Elem& b) const {
    const unsigned d = degree();
    std::vector<uint64_t> r(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % modulus_;
    }
    for (size_t i = r.size(); i-- > d;) {
        uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (unsigned j = 0; j < d; ++j)
            r[i - d + j] = (r[i - d + j] + (modulus_ - lift_minpoly_[j] % modulus_) * c % modulus_) % modulus_;
    }
    r.resize(d);
    return r;
}

WittScalarRing::Elem WittScalarRing::pow(const Elem& a, uint64_t k) const {
    Elem r = one();
    Elem base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

FqField::Elem WittScalarRing::reduce_mod_p(const Elem& a) const {
    FqField::Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = a[i] % p_;
    return r;
}

WittScalarRing::Elem WittScalarRing::lift_canonical(const FqField::Elem& a) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = a[i] % p_;
    return r;
}

WittScalarRing::Elem WittScalarRing::convert_down(const Elem& a, const WittScalarRing& lower) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) r[i] = a[i] % lower.modulus();
    return r;
}

WittScalarRing::Elem WittScalarRing::inv(const Elem& a) const {
    if (!is_unit(a)) throw not_invertible("element is not a unit (zero mod p)");
    Elem x = lift_canonical(F_.inv(reduce_mod_p(a)));
    const Elem two = from_int(2);
    for (int iter = 0; iter < 8; ++iter) {
        Elem ax = mul(a, x);
        if (ax == one()) return x;
        x = mul(x, sub(two, ax));
    }
    if (mul(a, x) != one())
        throw precision_error("Hensel inversion failed to converge (internal error)");
    return x;
}

WittScalarRing::Elem WittScalarRing::teichmuller(const FqField::Elem& lambda) const {
    Elem t = lift_canonical(lambda);
    for (unsigned k = 1; k < N_; ++k) t = pow(t, F_.size());
    return t;
}

std::vector<FqField::Elem> WittScalarRing::teichmuller_digits(const Elem& a) const {
    std::vector<FqField::Elem> digits;
    digits.reserve(N_);
    Elem cur = a;
    for (unsigned i = 0; i < N_; ++i) {
        FqField::Elem lam = reduce_mod_p(cur);
        digits.push_back(lam);
        if (i + 1 == N_) break;
        Elem t = teichmuller(lam);
        Elem diff = sub(cur, t);
        cur = divide_by_p_exact(diff);
    }
    return digits;
}

WittScalarRing::Elem WittScalarRing::from_teichmuller_digits(const std::vector<FqField::Elem>& digits) const {
    Elem acc = zero();
    uint64_t pk = 1;
    for (unsigned i = 0; i < digits.size() && i < N_; ++i) {
        Elem t = teichmuller(digits[i]);
        for (auto& c : t) c = (c * (pk % modulus_)) % modulus_;
        acc = add(acc, t);
        pk *= p_;
        if (pk >= modulus_) pk %= modulus_;
    }
    return acc;
}

WittScalarRing::Elem WittScalarRing::frobenius(const Elem& a) const {
    auto digits = teichmuller_digits(a);
    for (auto& lam : digits) lam = F_.frobenius(lam);
    return from_teichmuller_digits(digits);
}

WittScalarRing::Elem WittScalarRing::divide_by_p_exact(const Elem& a) const {
    Elem r(degree());
    for (unsigned i = 0; i < degree(); ++i) {
        uint64_t c = a[i] % modulus_;
        if (c % p_ != 0)
            throw precision_error("exact division by p failed: coefficient not divisible");
        r[i] = c / p_;
    }
    return r;
}

std::string WittScalarRing::to_string(const Elem& a, const std::string& var) const {
    std::string out;
    for (unsigned i = 0; i < degree(); ++i) {
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

std::string WittScalarRing::to_string_with_modulus(const Elem& a, const std::string& var) const {
    std::string out = "(" + to_string(a, var) + ") mod (" + std::to_string(p_) + "^" + std::to_string(N_);
    if (degree() > 1) out += "; " + F_.poly_to_string(var);
    out += ")";
    return out;
}

CoefficientEmbedding::CoefficientEmbedding(WittScalarRing src, WittScalarRing dst)
    : src_(std::move(src)), dst_(std::move(dst)),
      embed_(src_.residue_field(), dst_.residue_field()) {
    if (src_.precision() != dst_.precision())
        throw config_error("embedding requires matching precisions");
}

WittScalarRing::Elem CoefficientEmbedding::apply(unsigned i, const WittScalarRing::Elem& x) const {
    if (i >= src_.degree())
        throw config_error("embedding index out of range");
    auto digits = src_.teichmuller_digits(x);
    std::vector<FqField::Elem> out;
    out.reserve(digits.size());
    for (const auto& lam : digits)
        out.push_back(embed_.apply(src_.residue_field().frobenius_pow(lam, i)));
    return dst_.from_teichmuller_digits(out);
}

// ---------------------------------------------------------------------------

EScalarRing::EScalarRing(const FieldParams& params, unsigned Npi)
    : params_(params),
      W_(params.make_residue_field(), std::max<unsigned>(1, (Npi + params.e - 1) / params.e)),
      e_(params.e), Npi_(Npi) {
    params_.validate();
    if (Npi_ == 0) throw config_error("pi-adic precision must be >= 1");
    auto eis = params_.eisenstein_or_default();
    pi_pow_reduction_.reserve(e_);
    for (unsigned j = 0; j < e_; ++j) pi_pow_reduction_.push_back(W_.from_int(-eis[j]));
}

namespace {
// per-component p-adic precision of component j at pi-precision Npi
unsigned comp_prec(unsigned Npi, unsigned e, unsigned j) {
    if (Npi <= j) return 0;
    return (Npi - j + e - 1) / e;
}

// Reduce every component into its certified range: component j of an element
// at pi-precision Npi is only determined mod p^{ceil((Npi-j)/e)}.
EScalarRing::Elem canonical(EScalarRing::Elem a, const EScalarRing& ring) {
    const unsigned e = ring.ram_index();
    for (unsigned j = 0; j < e; ++j) {
        const uint64_t m = checked_pow_u64(ring.p(), comp_prec(ring.precision_pi(), e, j));
        for (auto& c : a.c[j]) c %= m;
    }
    return a;
}
} // namespace

EScalarRing::Elem EScalarRing::zero() const {
    Elem r;
    r.c.assign(e_, W_.zero());
    return r;
}

EScalarRing::Elem EScalarRing::one() const {
    Elem r = zero();
    r.c[0] = W_.one();
    return r;
}

EScalarRing::Elem EScalarRing::from_int(int64_t v) const {
    Elem r = zero();
    r.c[0] = W_.from_int(v);
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::from_unramified(const WittScalarRing::Elem& w) const {
    Elem r = zero();
    r.c[0] = w;
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::pi() const {
    Elem r = zero();
    if (e_ == 1) {
        r.c[0] = W_.from_int(int64_t(p()));
    } else if (e_ > 1 && Npi_ > 1) {
        r.c[1] = W_.one();
    }
    return canonical(r, *this);
}

bool EScalarRing::is_zero(const Elem& a) const {
    for (unsigned j = 0; j < e_; ++j) {
        uint64_t m = checked_pow_u64(p(), comp_prec(Npi_, e_, j));
        for (auto c : a.c[j])
            if (c % m != 0) return false;
    }
    return true;
}

bool EScalarRing::is_unit(const Elem& a) const {
    return !residue_field().is_zero(reduce_mod_pi(a));
}

EScalarRing::Elem EScalarRing::add(const Elem& a, const Elem& b) const {
    Elem r;
    r.c.reserve(e_);
    for (unsigned j = 0; j < e_; ++j) r.c.push_back(W_.add(a.c[j], b.c[j]));
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::sub(const Elem& a, const Elem& b) const {
    Elem r;
    r.c.reserve(e_);
    for (unsigned j = 0; j < e_; ++j) r.c.push_back(W_.sub(a.c[j], b.c[j]));
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::neg(const Elem& a) const {
    Elem r;
    r.c.reserve(e_);
    for (unsigned j = 0; j < e_; ++j) r.c.push_back(W_.neg(a.c[j]));
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::mul(const Elem& a, const Elem& b) const {
    if (e_ == 1) {
        Elem r;
        r.c.push_back(W_.mul(a.c[0], b.c[0]));
        return canonical(r, *this);
    }
    std::vector<WittScalarRing::Elem> conv(2 * e_ - 1, W_.zero());
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j)
            conv[i + j] = W_.add(conv[i + j], W_.mul(a.c[i], b.c[j]));
    for (size_t k = conv.size(); k-- > e_;) {
        WittScalarRing::Elem t = conv[k];
        if (W_.is_zero(t)) continue;
        conv[k] = W_.zero();
        for (unsigned j = 0; j < e_; ++j)
            conv[k - e_ + j] = W_.add(conv[k - e_ + j], W_.mul(t, pi_pow_reduction_[j]));
    }
    Elem r;
    r.c.assign(conv.begin(), conv.begin() + e_);
    return canonical(r, *this);
}

EScalarRing::Elem EScalarRing::pow(const Elem& a, uint64_t k) const {
    Elem r = one();
    Elem base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

EScalarRing::Elem EScalarRing::inv(const Elem& a) const {
    if (!is_unit(a)) throw not_invertible("element is not a unit (zero mod pi)");
    Elem x = from_unramified(W_.lift_canonical(residue_field().inv(reduce_mod_pi(a))));
    const Elem two = from_int(2);
    for (int iter = 0; iter < 10; ++iter) {
        Elem ax = mul(a, x);
        if (ax == one()) return x;
        x = mul(x, sub(two, ax));
    }
    if (mul(a, x) != one())
        throw precision_error("Hensel inversion failed to converge (internal error)");
    return x;
}

FqField::Elem EScalarRing::reduce_mod_pi(const Elem& a) const {
    return W_.reduce_mod_p(a.c[0]);
}

EScalarRing::Elem EScalarRing::teichmuller(const FqField::Elem& lambda) const {
    return from_unramified(W_.teichmuller(lambda));
}

EScalarRing::Elem EScalarRing::convert_down(const Elem& a, const EScalarRing& lower) const {
    Elem r;
    r.c.reserve(lower.e_);
    for (unsigned j = 0; j < lower.e_; ++j)
        r.c.push_back(W_.convert_down(a.c[j], lower.W_));
    return canonical(r, lower);
}

bool EScalarRing::is_divisible_by_p(const Elem& a) const {
    for (unsigned j = 0; j < e_; ++j) {
        unsigned nj = comp_prec(Npi_, e_, j);
        if (nj == 0) continue;
        for (auto c : a.c[j])
            if (c % p() != 0) return false;
    }
    return true;
}

EScalarRing::Elem EScalarRing::divide_by_p_exact(const Elem& a) const {
    Elem r;
    r.c.reserve(e_);
    for (unsigned j = 0; j < e_; ++j) {
        unsigned nj = comp_prec(Npi_, e_, j);
        WittScalarRing::Elem comp = a.c[j];
        for (auto& c : comp) {
            uint64_t m = checked_pow_u64(p(), nj);
            uint64_t v = c % m;
            if (nj > 0 && v % p() != 0)
                throw precision_error("exact division by p failed: component not divisible");
            c = nj > 0 ? v / p() : 0;
        }
        r.c.push_back(comp);
    }
    // certified at pi-precision Npi - e (caller should canonicalize there)
    return r;
}

EScalarRing::Elem EScalarRing::divide_by_pi_exact(const Elem& a) const {
    if (e_ == 1) return divide_by_p_exact(a);
    if (!residue_field().is_zero(reduce_mod_pi(a)))
        throw precision_error("exact division by pi failed: element is a unit");
    auto eis = params_.eisenstein_or_default();
    // p = -a_0 / u would be circular; instead use pi * s = -a_0 with
    // s = pi^{e-1} + sum_{j>=1} a_j pi^{j-1}, so c_0 / pi = (c_0 / (-a_0)) * s.
    // -a_0 = p * u with u a unit integer.
    int64_t u_int = -eis[0] / int64_t(p());
    WittScalarRing::Elem w0 = a.c[0];
    for (auto& c : w0) {
        if (c % p() != 0)
            throw precision_error("exact division by pi failed: component not divisible by p");
        c /= p();
    }
    WittScalarRing::Elem scaled = W_.mul(w0, W_.inv(W_.from_int(u_int)));
    Elem r = zero();
    for (unsigned j = 1; j < e_; ++j) r.c[j - 1] = a.c[j];
    // add scaled * s where s = pi^{e-1} + sum_{j=1}^{e-1} a_j pi^{j-1}
    r.c[e_ - 1] = W_.add(r.c[e_ - 1], scaled);
    for (unsigned j = 1; j < e_; ++j)
        r.c[j - 1] = W_.add(r.c[j - 1], W_.mul(scaled, W_.from_int(eis[j])));
    return r; // certified at pi-precision Npi - 1
}

unsigned EScalarRing::pi_valuation(const Elem& a) const {
    unsigned best = Npi_;
    for (unsigned j = 0; j < e_; ++j) {
        unsigned vp = W_.precision();
        for (auto c : a.c[j]) {
            if (c == 0) continue;
            unsigned v = 0;
            while (c % p() == 0) {
                c /= p();
                ++v;
            }
            vp = std::min(vp, v);
        }
        unsigned cand = j + e_ * vp;
        best = std::min(best, cand);
    }
    return std::min(best, Npi_);
}

EScalarRing::Elem EScalarRing::divide_by_pi_pow(Elem a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a = divide_by_pi_exact(a);
    return a;
}

EScalarRing::Elem EScalarRing::frobenius(const Elem& a) const {
    if (e_ > 1)
        throw config_error("Frobenius is not defined on the ramified part (e > 1)");
    Elem r;
    r.c.push_back(W_.frobenius(a.c[0]));
    return canonical(r, *this);
}

std::vector<FqField::Elem> EScalarRing::pi_digits(const Elem& a) const {
    std::vector<FqField::Elem> digits;
    digits.reserve(Npi_);
    EScalarRing ring = *this;
    Elem cur = a;
    for (unsigned i = 0; i < Npi_; ++i) {
        FqField::Elem lam = ring.reduce_mod_pi(cur);
        digits.push_back(lam);
        if (i + 1 == Npi_) break;
        Elem diff = ring.sub(cur, ring.teichmuller(lam));
        Elem divided = ring.divide_by_pi_exact(diff);
        EScalarRing next = ring.at_precision_pi(ring.Npi_ - 1);
        cur = ring.convert_down(divided, next);
        ring = next;
    }
    return digits;
}

EScalarRing::Elem EScalarRing::from_pi_digits(const std::vector<FqField::Elem>& digits) const {
    Elem acc = zero();
    Elem pw = one();
    const Elem piv = pi();
    for (unsigned i = 0; i < digits.size() && i < Npi_; ++i) {
        acc = add(acc, mul(pw, teichmuller(digits[i])));
        if (i + 1 < digits.size()) pw = mul(pw, piv);
    }
    return acc;
}

std::string EScalarRing::to_string(const Elem& a) const {
    if (e_ == 1) return W_.to_string(a.c[0]);
    std::string out;
    for (unsigned j = 0; j < e_; ++j) {
        if (W_.is_zero(a.c[j])) continue;
        if (!out.empty()) out += " + ";
        std::string comp = "(" + W_.to_string(a.c[j]) + ")";
        if (j >= 1) {
            comp += "*pi";
            if (j > 1) comp += "^" + std::to_string(j);
        }
        out += comp;
    }
    return out.empty() ? "0" : out;
}

} // namespace ringtower
