#pragma once

// Arbitrary-precision model of W(F_q)/p^N: polynomial coefficients modulo the
// canonical lift of the residue-field minimal polynomial, with cpp_int
// arithmetic so the precision N can exceed what 64-bit moduli allow.  Used by
// coefficient solvers that need elevated internal precision (each solved
// degree burns one factor of p) before converting down to the runtime rings.
//
// Satisfies the same ring concept as the scalar rings, so the windowed series
// templates work over it directly.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "ringtower/errors.hpp"
#include "ringtower/finite_field.hpp"
#include "ringtower/padic_scalar.hpp"

namespace ringtower {

using boost::multiprecision::cpp_int;

class BigModRing {
  public:
    using Elem = std::vector<cpp_int>; // length = residue degree, entries in [0, p^N)

    BigModRing(FqField F, unsigned N);

    const FqField& residue_field() const { return F_; }
    unsigned precision() const { return N_; }
    unsigned nilpotency_index() const { return N_; }
    unsigned degree() const { return F_.degree(); }
    const cpp_int& modulus() const { return modulus_; }

    Elem zero() const { return Elem(degree(), 0); }
    Elem one() const;
    Elem from_int(const cpp_int& v) const;

    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const { return !F_.is_zero(reduce_mod_p(a)); }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem base, cpp_int n) const;
    Elem inv(const Elem& a) const;

    FqField::Elem reduce_mod_p(const Elem& a) const;
    Elem teichmuller(const FqField::Elem& lambda) const;

    // Exact division by p; throws precision_error if any coefficient resists.
    // The result is meaningful modulo p^{N-1}; callers track the slack.
    Elem divide_by_p_exact(const Elem& a) const;

    // Reduce into a 64-bit scalar ring over the same residue field.
    WittScalarRing::Elem to_witt(const WittScalarRing& W, const Elem& a) const;

    std::string to_string(const Elem& a) const;

  private:
    FqField F_;
    unsigned N_;
    cpp_int modulus_;
    std::vector<cpp_int> minpoly_; // canonical small-coefficient lift, monic

    cpp_int norm(cpp_int v) const;
    std::vector<cpp_int> poly_mul_reduce(const Elem& a, const Elem& b) const;
};

} // namespace ringtower
