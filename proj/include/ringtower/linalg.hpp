#pragma once

// Dense linear algebra over the truncated scalar rings.
//
// Two regimes:
//  - invert_unit_pivot: Gauss-Jordan inversion that only ever divides by unit
//    pivots.  Succeeds exactly when the matrix is invertible modulo the
//    maximal ideal, which is the certificate the coordinate bases need.
//  - ValuationEchelon: membership of a vector in a submodule over Z/pi^N.
//    The truncated ring is not a field, so rows are reduced with
//    valuation-minimal pivots (Smith-normal-form style); over a chain ring
//    this decides membership exactly.

#include <cstdint>
#include <optional>
#include <vector>

#include "ringtower/errors.hpp"
#include "ringtower/padic_scalar.hpp"

namespace ringtower {

struct EMatrix {
    size_t rows = 0, cols = 0;
    std::vector<EScalarRing::Elem> data; // row-major

    EMatrix() = default;
    EMatrix(const EScalarRing& R, size_t r, size_t c)
        : rows(r), cols(c), data(r * c, R.zero()) {}
    EScalarRing::Elem& at(size_t i, size_t j) { return data[i * cols + j]; }
    const EScalarRing::Elem& at(size_t i, size_t j) const { return data[i * cols + j]; }
};

inline EMatrix mat_mul(const EScalarRing& R, const EMatrix& a, const EMatrix& b) {
    if (a.cols != b.rows) throw config_error("matrix dimension mismatch");
    EMatrix r(R, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            const auto& aik = a.at(i, k);
            if (R.is_zero(aik)) continue;
            for (size_t j = 0; j < b.cols; ++j)
                r.at(i, j) = R.add(r.at(i, j), R.mul(aik, b.at(k, j)));
        }
    return r;
}

inline std::vector<EScalarRing::Elem> mat_apply(const EScalarRing& R, const EMatrix& a,
                                                const std::vector<EScalarRing::Elem>& v) {
    if (a.cols != v.size()) throw config_error("matrix dimension mismatch");
    std::vector<EScalarRing::Elem> r(a.rows, R.zero());
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j)
            if (!R.is_zero(v[j])) r[i] = R.add(r[i], R.mul(a.at(i, j), v[j]));
    return r;
}

// Gauss-Jordan with unit pivots.  Throws not_invertible when some column has
// no unit entry left: exactly the case where the matrix is singular modulo
// the maximal ideal.
inline EMatrix invert_unit_pivot(const EScalarRing& R, EMatrix m) {
    if (m.rows != m.cols) throw config_error("inversion needs a square matrix");
    const size_t n = m.rows;
    EMatrix inv(R, n, n);
    for (size_t i = 0; i < n; ++i) inv.at(i, i) = R.one();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t i = col; i < n; ++i)
            if (R.is_unit(m.at(i, col))) {
                piv = i;
                break;
            }
        if (piv == n)
            throw not_invertible("matrix is singular modulo the maximal ideal");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        auto pinv = R.inv(m.at(col, col));
        for (size_t j = 0; j < n; ++j) {
            m.at(col, j) = R.mul(pinv, m.at(col, j));
            inv.at(col, j) = R.mul(pinv, inv.at(col, j));
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            auto f = m.at(i, col);
            if (R.is_zero(f)) continue;
            for (size_t j = 0; j < n; ++j) {
                m.at(i, j) = R.sub(m.at(i, j), R.mul(f, m.at(col, j)));
                inv.at(i, j) = R.sub(inv.at(i, j), R.mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

// Howell-style echelon basis of a submodule of (Z/p^m)^dim.  One pivot row
// per column, each normalized to leading entry p^k; inserting a row whose
// leading valuation is k > 0 also inserts its shadow p^{m-k}·row, so the
// stored rows are closed under the operations that let a greedy left-to-right
// reduction decide membership exactly over the chain ring Z/p^m.
class ZpHowell {
  public:
    ZpHowell(uint64_t p, unsigned m, size_t dim)
        : p_(p), m_(m), modulus_(checked_pow_u64(p, m)), dim_(dim), rows_(dim) {}

    void insert(std::vector<uint64_t> v) {
        for (size_t guard = 0; guard <= 2 * dim_ * (m_ + 1); ++guard) {
            size_t lead = dim_;
            for (size_t j = 0; j < dim_; ++j)
                if (v[j] % modulus_ != 0) {
                    lead = j;
                    break;
                }
            if (lead == dim_) return;
            unsigned val = val_of(v[lead]);
            if (rows_[lead].empty()) {
                normalize(v, lead, val);
                rows_[lead] = v;
                if (val > 0) {
                    // shadow: p^{m-val} * row has a vanishing lead
                    auto shadow = v;
                    uint64_t s = pow_u64(m_ - val);
                    for (auto& c : shadow) c = mod_mul(c, s % modulus_, modulus_);
                    insert(std::move(shadow));
                }
                return;
            }
            unsigned pval = val_of(rows_[lead][lead]);
            if (val >= pval) {
                // eliminate the lead with the stored pivot
                uint64_t mult = mod_mul(v[lead] / pow_u64(pval), 1, modulus_);
                for (size_t j = 0; j < dim_; ++j)
                    v[j] = mod_sub(v[j], mod_mul(mult, rows_[lead][j], modulus_), modulus_);
            } else {
                // the new row has the shallower pivot: swap it in, re-insert old
                normalize(v, lead, val);
                std::swap(v, rows_[lead]);
                if (val > 0) {
                    auto shadow = rows_[lead];
                    uint64_t s = pow_u64(m_ - val);
                    for (auto& c : shadow) c = mod_mul(c, s % modulus_, modulus_);
                    insert(std::move(shadow));
                }
            }
        }
        throw precision_error("echelon insertion failed to terminate");
    }

    // Greedy left-to-right reduction; complete on the Howell-closed basis.
    bool contains(std::vector<uint64_t> v) const {
        for (size_t j = 0; j < dim_; ++j) {
            uint64_t c = v[j] % modulus_;
            if (c == 0) continue;
            if (rows_[j].empty()) return false;
            unsigned pval = val_of(rows_[j][j]);
            if (val_of(c) < pval) return false;
            uint64_t mult = c / pow_u64(pval);
            for (size_t k = j; k < dim_; ++k)
                v[k] = mod_sub(v[k], mod_mul(mult, rows_[j][k], modulus_), modulus_);
        }
        return true;
    }

    size_t rank() const {
        size_t r = 0;
        for (const auto& row : rows_)
            if (!row.empty()) ++r;
        return r;
    }

  private:
    uint64_t p_;
    unsigned m_;
    uint64_t modulus_;
    size_t dim_;
    std::vector<std::vector<uint64_t>> rows_; // rows_[c]: pivot row with lead at column c

    unsigned val_of(uint64_t c) const {
        c %= modulus_;
        if (c == 0) return m_;
        unsigned v = 0;
        while (c % p_ == 0) {
            c /= p_;
            ++v;
        }
        return v;
    }
    uint64_t pow_u64(unsigned k) const {
        uint64_t r = 1;
        for (unsigned i = 0; i < k; ++i) r *= p_;
        return r;
    }
    // scale the row so the lead becomes exactly p^val
    void normalize(std::vector<uint64_t>& v, size_t lead, unsigned val) const {
        uint64_t unit = v[lead] / pow_u64(val);
        // invert the unit mod p^m
        uint64_t x = 1;
        for (unsigned i = 0; i < 6 * (m_ + 1); ++i) {
            uint64_t t = mod_mul(unit, x, modulus_);
            x = mod_mul(x, mod_sub(2, t, modulus_), modulus_);
            if (mod_mul(unit, x, modulus_) == 1) break;
        }
        if (mod_mul(unit, x, modulus_) != 1)
            throw precision_error("pivot unit inversion failed");
        for (auto& c : v) c = mod_mul(c, x, modulus_);
    }
};

// Membership of scalar-ring vectors in the submodule generated over O_E by a
// set of vectors, for unramified coefficient rings: each O_E-generator is
// expanded to its Z/p^N-span via multiplication by the residue-basis powers,
// coordinates are flattened, and the Howell basis decides membership.
class ModuleMembership {
  public:
    ModuleMembership(const EScalarRing& R, size_t dim)
        : R_(&R), dim_(dim),
          howell_(R.params().p, R.precision_p(), dim * R.residue_field().degree()) {
        if (R.params().e != 1)
            throw config_error(
                "module membership is implemented for unramified coefficient rings");
        // cache the residue-basis multipliers 1, w, ..., w^{d-1}
        const unsigned d = R.residue_field().degree();
        for (unsigned a = 0; a < d; ++a) {
            EScalarRing::Elem wa = R.zero();
            WittScalarRing::Elem pw(d, 0);
            pw[a] = 1;
            wa.c[0] = pw;
            basis_.push_back(std::move(wa));
        }
    }

    void add_generator(const std::vector<EScalarRing::Elem>& g) {
        for (const auto& wa : basis_) {
            std::vector<uint64_t> flat;
            flat.reserve(howell_dim());
            for (const auto& c : g) {
                auto scaled = R_->mul(wa, c);
                for (const auto& coord : scaled.c[0]) flat.push_back(coord);
            }
            howell_.insert(std::move(flat));
        }
    }

    bool contains(const std::vector<EScalarRing::Elem>& v) const {
        std::vector<uint64_t> flat;
        flat.reserve(howell_dim());
        for (const auto& c : v)
            for (const auto& coord : c.c[0]) flat.push_back(coord);
        return howell_.contains(std::move(flat));
    }

  private:
    size_t howell_dim() const { return dim_ * R_->residue_field().degree(); }
    const EScalarRing* R_;
    size_t dim_;
    ZpHowell howell_;
    std::vector<EScalarRing::Elem> basis_;
};

} // namespace ringtower
