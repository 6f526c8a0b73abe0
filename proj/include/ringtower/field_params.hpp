#pragma once

#include <cstdint>
#include <vector>

#include "ringtower/errors.hpp"
#include "ringtower/finite_field.hpp"
#include "ringtower/util.hpp"

namespace ringtower {

// Arithmetic setting: K is the unramified extension of Q_p of degree f with
// residue field F_q (q = p^f); the coefficient field E has residue field F of
// degree fprime over F_q (so #F = q' = q^fprime) and ramification index e over
// its maximal unramified subfield, cut out by an Eisenstein polynomial
// pi^e + a_{e-1} pi^{e-1} + ... + a_0 with p | a_i and p^2 not dividing a_0.
struct FieldParams {
    uint64_t p = 2;
    unsigned f = 1;
    unsigned fprime = 1;
    unsigned e = 1;
    // Optional explicit defining polynomial of F over F_p (degree f*fprime,
    // monic, little-endian). Empty means the built-in default.
    std::vector<uint64_t> residue_poly;
    // Eisenstein coefficients a_0..a_{e-1} (integers). Empty with e == 1 is
    // the standard unramified case; empty with e > 1 defaults to pi^e = p,
    // i.e. a_0 = -p, the rest zero.
    std::vector<int64_t> eisenstein;

    uint64_t q() const { return checked_pow_u64(p, f); }
    uint64_t qprime() const { return checked_pow_u64(p, f * fprime); }
    unsigned residue_degree() const { return f * fprime; }

    std::vector<int64_t> eisenstein_or_default() const {
        if (!eisenstein.empty()) return eisenstein;
        std::vector<int64_t> a(e, 0);
        a[0] = -int64_t(p);
        return a;
    }

    void validate() const {
        if (f == 0 || fprime == 0 || e == 0)
            throw config_error("f, fprime, e must all be >= 1");
        if (!residue_poly.empty() && residue_poly.size() != size_t(residue_degree()) + 1)
            throw config_error("residue polynomial degree must equal f*fprime");
        if (!eisenstein.empty()) {
            if (eisenstein.size() != e)
                throw config_error("Eisenstein data must provide exactly e coefficients a_0..a_{e-1}");
            for (int64_t a : eisenstein)
                if (a % int64_t(p) != 0)
                    throw config_error("Eisenstein coefficients must all be divisible by p");
            if (eisenstein[0] % int64_t(p * p) == 0)
                throw config_error("Eisenstein constant term must have p-valuation exactly 1");
        }
    }

    // Residue field F of E (degree f*fprime over F_p).
    FqField make_residue_field() const {
        if (residue_poly.empty()) return FqField(p, residue_degree());
        return FqField(p, residue_poly, residue_degree());
    }

    // Residue field F_q of K (always the default polynomial; it only needs to
    // embed into F, and the embedding is found by root search).
    FqField make_base_residue_field() const { return FqField(p, f); }
};

} // namespace ringtower
