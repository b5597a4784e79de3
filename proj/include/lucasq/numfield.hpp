#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace lucasq {

class NfElement;

/// Closed rational interval [lo, hi].
struct RealInterval {
    mpq_class lo;
    mpq_class hi;

    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    mpq_class width() const { return hi - lo; }
    double midpoint() const { return mpq_class((lo + hi) / 2).get_d(); }
};

struct NamedUnit {
    std::string label;
    std::vector<mpq_class> coords;
};

/// Q(alpha) for a monic irreducible integer polynomial, with shipped unit and Galois data.
class NumberField {
public:
    NumberField(std::string name, std::vector<mpz_class> min_poly);

    static NumberField from_json(const nlohmann::json& j);

    const std::string& name() const { return name_; }
    int degree() const { return degree_; }
    /// Coefficients low to high; leading coefficient is 1.
    const std::vector<mpz_class>& min_poly() const { return min_poly_; }

    const std::vector<NamedUnit>& units() const { return units_; }
    bool has_sigma() const { return !sigma_images_.empty(); }
    /// Image of the power basis vector alpha^i under sigma, as coordinates.
    const std::vector<std::vector<mpq_class>>& sigma_images() const { return sigma_images_; }
    const std::vector<std::string>& annotations() const { return annotations_; }

    NfElement element(std::vector<mpq_class> coords) const;
    NfElement from_ints(std::initializer_list<long> coords) const;
    NfElement scalar(const mpq_class& c) const;
    NfElement zero() const;
    NfElement one() const;
    NfElement generator() const;
    NfElement unit(const std::string& label) const;

    /// Isolating intervals for the real roots of min_poly, ascending, each of width < 2^-bits.
    std::vector<RealInterval> real_roots(int bits = 64) const;

    /// Exact irreducibility of min_poly modulo a small prime p.
    bool irreducible_mod(unsigned long p) const;

    bool operator==(const NumberField& o) const { return this == &o; }

private:
    std::string name_;
    std::vector<mpz_class> min_poly_;
    int degree_;
    std::vector<NamedUnit> units_;
    std::vector<std::vector<mpq_class>> sigma_images_;
    std::vector<std::string> annotations_;
};

/// Exact element of Q(alpha): rational coordinates on 1, alpha, ..., alpha^{d-1}.
class NfElement {
public:
    NfElement() = default;
    NfElement(const NumberField* field, std::vector<mpq_class> coords);

    const NumberField& field() const { return *field_; }
    const NumberField* field_ptr() const { return field_; }
    const std::vector<mpq_class>& coords() const { return coords_; }
    const mpq_class& operator[](std::size_t i) const { return coords_[i]; }

    bool is_zero() const;
    bool is_rational() const;
    /// Least common denominator of the coordinates.
    mpz_class denominator() const;

    NfElement operator-() const;
    NfElement& operator+=(const NfElement& o);
    NfElement& operator-=(const NfElement& o);
    NfElement& operator*=(const NfElement& o);
    NfElement& operator*=(const mpq_class& c);

    friend NfElement operator+(NfElement a, const NfElement& b) { return a += b; }
    friend NfElement operator-(NfElement a, const NfElement& b) { return a -= b; }
    friend NfElement operator*(NfElement a, const NfElement& b) { return a *= b; }
    friend NfElement operator*(NfElement a, const mpq_class& c) { return a *= c; }
    friend NfElement operator*(const mpq_class& c, NfElement a) { return a *= c; }
    /// Throws std::domain_error on division by zero.
    friend NfElement operator/(const NfElement& a, const NfElement& b);

    friend bool operator==(const NfElement& a, const NfElement& b) {
        return a.coords_ == b.coords_;
    }

    /// Throws std::domain_error for zero.
    NfElement inverse() const;
    NfElement pow(unsigned long e) const;

    /// Matrix of multiplication by this element on the power basis (column j = this * alpha^j).
    std::vector<std::vector<mpq_class>> mult_matrix() const;

    std::string str() const;

private:
    const NumberField* field_ = nullptr;
    std::vector<mpq_class> coords_;
};

enum class ArithOp { add, sub, mul, div };

NfElement nf_arith(const NfElement& a, const NfElement& b, ArithOp op);

/// Determinant of the multiplication matrix.
mpq_class nf_norm(const NfElement& a);

/// Res(min_poly, a(x)) via the Sylvester matrix; equals the norm for monic min_poly.
mpq_class nf_norm_resultant(const NfElement& a);

mpq_class nf_trace(const NfElement& a);

/// Coordinate-linear Galois action from the field's sigma images.
/// Throws std::logic_error when the field ships no sigma.
NfElement apply_sigma(const NfElement& a);

/// Interval enclosures of a at every real root of min_poly (ascending root order).
std::vector<RealInterval> real_embedding_values(const NfElement& a, int bits = 64);

/// Sign of a at the real root with the given ascending index; refines until decided.
/// Throws std::domain_error when a is zero.
int embedding_sign(const NfElement& a, std::size_t root_index);

/// Unit square-class representatives of norm +1 built from the shipped fundamental units.
std::vector<NfElement> lambda_candidates(const NumberField& field);

/// For s*P^2 + c*R^2 = lambda*U^2 with (P, R) != 0: the sign lambda must take at each real
/// embedding, or 0 when that embedding imposes nothing.
std::vector<int> required_lambda_signs(int p2_sign, const NfElement& r2_coeff);

/// Keep candidates matching every nonzero entry of required_signs.
std::vector<NfElement> positivity_filter(const std::vector<NfElement>& candidates,
                                         const std::vector<int>& required_signs);

}  // namespace lucasq
