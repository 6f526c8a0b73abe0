#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringtower/errors.hpp"
#include "ringtower/field_params.hpp"
#include "ringtower/finite_field.hpp"

namespace ringtower {

// The unramified coefficient ring W(F_{p^d})/p^N realized as
// (Z/p^N)[w]/(g~) where g~ is the coefficient-wise canonical lift of the
// defining polynomial of the residue field. Elements are little-endian
// coefficient vectors of length d with entries in [0, p^N).
class WittScalarRing {
  public:
    using Elem = std::vector<uint64_t>;

    WittScalarRing(FqField residue_field, unsigned N);

    const FqField& residue_field() const { return F_; }
    unsigned precision() const { return N_; }
    unsigned nilpotency_index() const { return N_; }
    uint64_t p() const { return p_; }
    uint64_t modulus() const { return modulus_; } // p^N
    unsigned degree() const { return F_.degree(); }

    WittScalarRing at_precision(unsigned N) const { return WittScalarRing(F_, N); }

    Elem zero() const { return Elem(degree(), 0); }
    Elem one() const;
    Elem from_int(int64_t c) const;

    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const { return !F_.is_zero(reduce_mod_p(a)); }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, uint64_t k) const;
    Elem inv(const Elem& a) const; // Hensel lift of the residue inverse

    FqField::Elem reduce_mod_p(const Elem& a) const;
    Elem lift_canonical(const FqField::Elem& a) const; // coefficient-wise lift
    Elem convert_down(const Elem& a, const WittScalarRing& lower) const;

    // Teichmüller lift: the unique multiplicative section of reduction mod p,
    // computed as the limit of x -> x^{#F} from the canonical lift.
    Elem teichmuller(const FqField::Elem& lambda) const;

    // Teichmüller digit expansion x = sum_i p^i [lambda_i], exactly N digits.
    std::vector<FqField::Elem> teichmuller_digits(const Elem& a) const;
    Elem from_teichmuller_digits(const std::vector<FqField::Elem>& digits) const;

    // The unique Frobenius lift: acts as lambda -> lambda^p on Teichmüller digits.
    Elem frobenius(const Elem& a) const;

    // Exact division by p; requires every digitwise coefficient divisible by p
    // (throws precision_error otherwise). The result is meaningful mod p^{N-1}.
    Elem divide_by_p_exact(const Elem& a) const;

    std::string to_string(const Elem& a, const std::string& var = "w") const;
    // Full rendering with modulus annotation: "(2 + 1*w) mod (2^3; w^2+w+1)".
    std::string to_string_with_modulus(const Elem& a, const std::string& var = "w") const;

  private:
    FqField F_;
    unsigned N_;
    uint64_t p_;
    uint64_t modulus_;
    std::vector<uint64_t> lift_minpoly_; // monic, length d+1, coeffs mod p^N
};

// sigma_i : W(F_q)/p^N -> W(F)/p^N, the i-th lift of Frobenius composed with
// the base embedding; acts on Teichmüller digits by lambda -> embed(lambda^{p^i}).
class CoefficientEmbedding {
  public:
    CoefficientEmbedding(WittScalarRing src, WittScalarRing dst);

    const WittScalarRing& src() const { return src_; }
    const WittScalarRing& dst() const { return dst_; }

    WittScalarRing::Elem apply(unsigned i, const WittScalarRing::Elem& x) const;

  private:
    WittScalarRing src_;
    WittScalarRing dst_;
    SubfieldEmbedding embed_;
};

// O_E / pi^{Npi} where O_E = W(F)[pi]/(Eisenstein). Elements are vectors of e
// components over W(F)/p^{Nw} (x = sum_j c_j pi^j); the pi-adic precision is
// Npi = e * Nw, so all components share one uniform p-adic precision. For the
// unramified default (e = 1, pi = p) this is exactly WittScalarRing.
class EScalarRing {
  public:
    struct Elem {
        std::vector<WittScalarRing::Elem> c;
        bool operator==(const Elem&) const = default;
    };

    EScalarRing(const FieldParams& params, unsigned Npi);

    const FieldParams& params() const { return params_; }
    const WittScalarRing& unramified() const { return W_; }
    const FqField& residue_field() const { return W_.residue_field(); }
    unsigned ram_index() const { return e_; }
    unsigned precision_pi() const { return Npi_; }   // pi-adic
    unsigned nilpotency_index() const { return Npi_; }
    unsigned precision_p() const { return W_.precision(); } // per-component
    uint64_t p() const { return W_.p(); }

    EScalarRing at_precision_pi(unsigned Npi) const { return EScalarRing(params_, Npi); }

    Elem zero() const;
    Elem one() const;
    Elem from_int(int64_t c) const;
    Elem from_unramified(const WittScalarRing::Elem& w) const;
    Elem pi() const;

    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, uint64_t k) const;
    Elem inv(const Elem& a) const;

    FqField::Elem reduce_mod_pi(const Elem& a) const; // residue in F
    Elem teichmuller(const FqField::Elem& lambda) const;
    Elem convert_down(const Elem& a, const EScalarRing& lower) const;

    bool is_divisible_by_p(const Elem& a) const;
    // Exact division by p (throws precision_error if not divisible); the
    // result is certified in the ring at pi-precision Npi - e.
    Elem divide_by_p_exact(const Elem& a) const;
    // Exact division by pi; result certified at pi-precision Npi - 1. Only
    // meaningful for e > 1 (for e = 1, pi = p).
    Elem divide_by_pi_exact(const Elem& a) const;

    // pi-adic valuation, capped at the precision (zero maps to the cap).
    unsigned pi_valuation(const Elem& a) const;
    // a / pi^k, each step exact; throws precision_error if any step resists.
    Elem divide_by_pi_pow(Elem a, unsigned k) const;

    // Frobenius on the unramified part; rejects e > 1 (not defined on pi).
    Elem frobenius(const Elem& a) const;

    // pi-adic Teichmüller digit expansion x = sum_j pi^j [lambda_j], Npi digits.
    std::vector<FqField::Elem> pi_digits(const Elem& a) const;
    Elem from_pi_digits(const std::vector<FqField::Elem>& digits) const;

    std::string to_string(const Elem& a) const;

  private:
    FieldParams params_;
    WittScalarRing W_;
    unsigned e_;
    unsigned Npi_;
    std::vector<WittScalarRing::Elem> pi_pow_reduction_; // pi^e = sum_j r_j pi^j
};

} // namespace ringtower
