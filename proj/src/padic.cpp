#include "lucasq/padic.hpp"

#include <algorithm>

#include "lucasq/arith.hpp"

namespace lucasq {

namespace {

mpz_class modulus(unsigned long p, int n) { return ipow(mpz_class(p), static_cast<unsigned long>(std::max(n, 0))); }

}  // namespace

PadicValuation PadicInt::valuation() const {
    if (residue == 0) return {precision, true};
    return {std::min(lucasq::valuation(residue, prime), precision), false};
}

mpz_class PadicInt::unit_part() const {
    const auto v = valuation();
    if (v.lower_bound_only) throw PrecisionError("unit_part: value is zero to precision", precision + 1);
    mpz_class u;
    mpz_divexact(u.get_mpz_t(), residue.get_mpz_t(), ipow(mpz_class(prime), static_cast<unsigned long>(v.value)).get_mpz_t());
    return u;
}

mpz_class PadicInt::centered() const {
    const mpz_class m = modulus(prime, precision);
    mpz_class r = residue;
    if (2 * r > m) r -= m;
    return r;
}

PadicNfElement::PadicNfElement(const NumberField* field, unsigned long p, int precision,
                               std::vector<mpz_class> coords)
    : field_(field), p_(p), precision_(precision), coords_(std::move(coords)) {
    if (field_ == nullptr || static_cast<int>(coords_.size()) != field_->degree()) {
        throw std::invalid_argument("PadicNfElement: coordinate count does not match field degree");
    }
    if (precision_ < 0) throw PrecisionError("PadicNfElement: negative precision", 0);
    reduce();
}

PadicNfElement PadicNfElement::zero(const NumberField* field, unsigned long p, int precision) {
    return {field, p, precision, std::vector<mpz_class>(static_cast<std::size_t>(field->degree()))};
}

PadicNfElement PadicNfElement::one(const NumberField* field, unsigned long p, int precision) {
    std::vector<mpz_class> c(static_cast<std::size_t>(field->degree()));
    c[0] = 1;
    return {field, p, precision, std::move(c)};
}

void PadicNfElement::reduce() {
    const mpz_class m = modulus(p_, precision_);
    for (auto& c : coords_) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
}

PadicValuation PadicNfElement::valuation() const {
    int v = precision_;
    for (const auto& c : coords_) {
        if (c != 0) v = std::min(v, lucasq::valuation(c, p_));
    }
    const bool zero = std::all_of(coords_.begin(), coords_.end(), [](const mpz_class& c) { return c == 0; });
    return {v, zero};
}

bool PadicNfElement::is_unit() const {
    const auto v = valuation();
    return !v.lower_bound_only && v.value == 0;
}

PadicNfElement PadicNfElement::operator-() const {
    PadicNfElement r = *this;
    for (auto& c : r.coords_) c = -c;
    r.reduce();
    return r;
}

PadicNfElement& PadicNfElement::operator+=(const PadicNfElement& o) {
    if (o.p_ != p_ || o.field_ != field_) throw std::invalid_argument("PadicNfElement: mismatched context");
    precision_ = std::min(precision_, o.precision_);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    reduce();
    return *this;
}

PadicNfElement& PadicNfElement::operator-=(const PadicNfElement& o) { return *this += -o; }

PadicNfElement& PadicNfElement::operator*=(const PadicNfElement& o) {
    if (o.p_ != p_ || o.field_ != field_) throw std::invalid_argument("PadicNfElement: mismatched context");
    const auto va = valuation();
    const auto vb = o.valuation();
    // a known mod p^Na, b mod p^Nb: ab known mod p^min(Na + v(b), Nb + v(a)).
    const int prec = std::min(precision_ + vb.value, o.precision_ + va.value);
    const std::size_t d = coords_.size();
    const auto& f = field_->min_poly();
    std::vector<mpz_class> r(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) r[i + j] += coords_[i] * o.coords_[j];
    }
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
        if (r[k] == 0) continue;
        const mpz_class c = r[k];
        r[k] = 0;
        for (std::size_t i = 0; i < d; ++i) r[k - d + i] -= c * f[i];
    }
    r.resize(d);
    coords_ = std::move(r);
    precision_ = prec;
    reduce();
    return *this;
}

PadicNfElement PadicNfElement::operator*(const mpz_class& c) const {
    PadicNfElement r = *this;
    const int vc = lucasq::valuation(c, p_, precision_);
    for (auto& x : r.coords_) x *= c;
    r.precision_ = precision_ + vc;
    r.reduce();
    return r;
}

PadicNfElement PadicNfElement::divide_by_p_power(int e) const {
    if (e == 0) return *this;
    const auto v = valuation();
    if (v.value < e) {
        if (!v.lower_bound_only) {
            throw std::domain_error("divide_by_p_power: element not divisible by p^" + std::to_string(e));
        }
        throw PrecisionError("divide_by_p_power: precision " + std::to_string(precision_) +
                                 " cannot absorb p^" + std::to_string(e),
                             e + 1);
    }
    PadicNfElement r = *this;
    const mpz_class pe = modulus(p_, e);
    for (auto& c : r.coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pe.get_mpz_t());
    r.precision_ = precision_ - e;
    r.reduce();
    return r;
}

NfElement PadicNfElement::representative() const {
    std::vector<mpq_class> c;
    for (const auto& x : coords_) c.emplace_back(x);
    return field_->element(std::move(c));
}

PadicNfElement PadicNfElement::inverse() const {
    if (!is_unit()) throw std::domain_error("PadicNfElement: inverse of a non-unit");
    // The integer representative is a unit too, so its norm is prime to p and its exact
    // inverse has p-integral coordinates.
    return padic_lift(representative().inverse(), p_, precision_);
}

PadicNfElement PadicNfElement::mul_exact(const NfElement& c, int max_loss) const {
    const mpz_class den = c.denominator();
    const int e = lucasq::valuation(den, p_);
    if (e > max_loss) {
        throw PrecisionError("mul_exact: coefficient denominator p^" + std::to_string(e) +
                                 " exceeds allowed loss " + std::to_string(max_loss),
                             2 * e);
    }
    const NfElement scaled = c * mpq_class(modulus(p_, e));
    PadicNfElement lifted = padic_lift(scaled, p_, precision_ + e);
    return (lifted * *this).divide_by_p_power(e);
}

PadicNfElement PadicNfElement::with_precision(int n) const {
    PadicNfElement r = *this;
    r.precision_ = std::min(n, precision_);
    r.reduce();
    return r;
}

bool PadicNfElement::congruent(const PadicNfElement& o) const {
    PadicNfElement diff = *this - o;
    return diff.is_zero_to_precision();
}

std::string PadicNfElement::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].get_str();
    }
    return s + "] mod " + std::to_string(p_) + "^" + std::to_string(precision_);
}

bool certify_inert(const NumberField& field, unsigned long p) {
    return is_prime_small(p) && field.irreducible_mod(p);
}

PadicNfElement padic_lift(const NfElement& a, unsigned long p, int precision) {
    if (!certify_inert(a.field(), p)) {
        throw std::domain_error("padic_lift: min_poly of " + a.field().name() +
                                " is reducible mod " + std::to_string(p));
    }
    const mpz_class m = modulus(p, precision);
    std::vector<mpz_class> c;
    for (const auto& q : a.coords()) {
        if (mpz_divisible_ui_p(q.get_den_mpz_t(), p) != 0) {
            throw std::domain_error("padic_lift: p divides a denominator of " + a.str());
        }
        c.push_back(mod_div(q.get_num(), q.get_den(), m));
    }
    return {a.field_ptr(), p, precision, std::move(c)};
}

PadicValuation padic_valuation(const PadicNfElement& a) { return a.valuation(); }

}  // namespace lucasq
