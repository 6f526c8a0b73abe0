#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringtower/errors.hpp"

namespace ringtower {

// The finite field F_{p^d} presented as F_p[w]/(g) for a monic irreducible g.
// Elements are coefficient vectors of length d (little-endian, entries in
// [0, p)). The class is a value type; elements are plain vectors operated on
// through the field object.
class FqField {
  public:
    using Elem = std::vector<uint64_t>;

    // Uses the built-in default polynomial for p in {2, 3, 5}, d <= 3.
    FqField(uint64_t p, unsigned d);

    // Caller-supplied monic polynomial, little-endian, length d+1.
    // Irreducibility over F_p is verified (Rabin's test); throws config_error.
    FqField(uint64_t p, const std::vector<uint64_t>& minpoly, unsigned d);

    uint64_t p() const { return p_; }
    unsigned degree() const { return d_; }
    uint64_t size() const { return size_; } // p^d
    const std::vector<uint64_t>& minpoly() const { return minpoly_; }

    Elem zero() const { return Elem(d_, 0); }
    Elem one() const;
    Elem gen() const; // the class of w (equals one() when d == 1 is avoided: gen of F_p is 1)
    Elem from_int(uint64_t c) const;

    bool is_zero(const Elem& a) const;
    bool is_one(const Elem& a) const;
    bool is_unit(const Elem& a) const { return !is_zero(a); }
    // Smallest n with (non-unit)^n == 0; a field kills non-units immediately.
    unsigned nilpotency_index() const { return 1; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, uint64_t e) const;
    Elem inv(const Elem& a) const; // throws not_invertible on zero

    Elem frobenius(const Elem& a) const { return pow(a, p_); }
    Elem frobenius_pow(const Elem& a, unsigned i) const;
    Elem pth_root(const Elem& a) const; // inverse of frobenius (bijective)

    // Integer encoding sum c_i p^i; total order used for deterministic scans.
    uint64_t encode(const Elem& a) const;
    Elem decode(uint64_t code) const;

    // Smallest element (in encode order) of multiplicative order p^d - 1.
    Elem multiplicative_generator() const;

    std::string to_string(const Elem& a, const std::string& var = "w") const;
    std::string poly_to_string(const std::string& var = "w") const;

    bool same_field(const FqField& other) const {
        return p_ == other.p_ && minpoly_ == other.minpoly_;
    }

    static std::vector<uint64_t> default_minpoly(uint64_t p, unsigned d);

  private:
    void validate_and_init();

    uint64_t p_ = 0;
    unsigned d_ = 0;
    uint64_t size_ = 0;
    std::vector<uint64_t> minpoly_; // monic, length d_+1
};

// Field homomorphism F_{p^{d0}} -> F_{p^{d1}} for d0 | d1, fixed by sending
// the generator of the small field to the smallest root (in encode order) of
// its defining polynomial in the big field. Deterministic across runs.
class SubfieldEmbedding {
  public:
    SubfieldEmbedding(const FqField& sub, const FqField& big);

    const FqField& sub() const { return sub_; }
    const FqField& big() const { return big_; }

    FqField::Elem apply(const FqField::Elem& a) const;

  private:
    FqField sub_;
    FqField big_;
    std::vector<FqField::Elem> gen_powers_; // images of w_sub^j, j < deg(sub)
};

} // namespace ringtower
