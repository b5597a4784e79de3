#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lucasq/numfield.hpp"

namespace lucasq {

/// Raised when a computation cannot be certified at the working p-adic precision.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, int required_precision)
        : std::runtime_error(what), required_(required_precision) {}
    /// Precision that would suffice, or 0 when unknown.
    int required_precision() const { return required_; }

private:
    int required_;
};

/// v_p of a p-adic quantity known modulo p^precision.
struct PadicValuation {
    int value;
    bool lower_bound_only;  // value == precision: only "v >= precision" is known

    std::string str() const {
        return lower_bound_only ? ">=" + std::to_string(value) : std::to_string(value);
    }
};

/// Element of Z_p known modulo p^precision.
struct PadicInt {
    mpz_class residue;  // in [0, p^precision)
    int precision = 0;
    unsigned long prime = 0;

    PadicValuation valuation() const;
    /// residue / p^v modulo p^(precision - v); requires a certified valuation.
    mpz_class unit_part() const;
    /// Symmetric representative in (-p^N/2, p^N/2].
    mpz_class centered() const;
};

/// Element of Z_p[alpha] (p inert) with coordinates known modulo p^precision.
class PadicNfElement {
public:
    PadicNfElement() = default;
    PadicNfElement(const NumberField* field, unsigned long p, int precision,
                   std::vector<mpz_class> coords);

    static PadicNfElement zero(const NumberField* field, unsigned long p, int precision);
    static PadicNfElement one(const NumberField* field, unsigned long p, int precision);

    const NumberField& field() const { return *field_; }
    const NumberField* field_ptr() const { return field_; }
    unsigned long prime() const { return p_; }
    int precision() const { return precision_; }
    const std::vector<mpz_class>& coords() const { return coords_; }
    PadicInt coord(std::size_t i) const { return {coords_[i], precision_, p_}; }

    /// min over coordinates (p inert); "v >= precision" when zero to precision.
    PadicValuation valuation() const;
    bool is_zero_to_precision() const { return valuation().lower_bound_only; }
    bool is_unit() const;

    PadicNfElement operator-() const;
    PadicNfElement& operator+=(const PadicNfElement& o);
    PadicNfElement& operator-=(const PadicNfElement& o);
    PadicNfElement& operator*=(const PadicNfElement& o);
    friend PadicNfElement operator+(PadicNfElement a, const PadicNfElement& b) { return a += b; }
    friend PadicNfElement operator-(PadicNfElement a, const PadicNfElement& b) { return a -= b; }
    friend PadicNfElement operator*(PadicNfElement a, const PadicNfElement& b) { return a *= b; }
    PadicNfElement operator*(const mpz_class& c) const;

    /// Exact division by p^e; loses e digits. Throws PrecisionError when v < e is not excluded.
    PadicNfElement divide_by_p_power(int e) const;

    /// Multiplicative inverse of a unit; throws std::domain_error for non-units.
    PadicNfElement inverse() const;

    /// Multiply by an exact element whose denominators may contain p (slack tracked).
    /// Throws PrecisionError when more than max_loss digits would be lost.
    PadicNfElement mul_exact(const NfElement& c, int max_loss) const;

    /// Integer-coordinate representative as an exact element.
    NfElement representative() const;

    /// Truncate to a lower precision.
    PadicNfElement with_precision(int n) const;

    /// Congruence modulo p^min(precisions).
    bool congruent(const PadicNfElement& o) const;

    std::string str() const;

private:
    void reduce();

    const NumberField* field_ = nullptr;
    unsigned long p_ = 0;
    int precision_ = 0;
    std::vector<mpz_class> coords_;
};

/// min_poly irreducible mod p; the only inertness certificate accepted.
bool certify_inert(const NumberField& field, unsigned long p);

/// Coordinate-wise reduction mod p^N. Throws std::domain_error when p divides a denominator
/// or the field is not certified inert at p.
PadicNfElement padic_lift(const NfElement& a, unsigned long p, int precision);

PadicValuation padic_valuation(const PadicNfElement& a);

}  // namespace lucasq
