#include "lucasq/arith.hpp"

#include <stdexcept>

namespace lucasq {

std::optional<mpz_class> exact_sqrt(const mpz_class& v) {
    if (sgn(v) < 0) return std::nullopt;
    if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

std::optional<mpq_class> exact_sqrt(const mpq_class& v) {
    auto n = exact_sqrt(mpz_class(v.get_num()));
    if (!n) return std::nullopt;
    auto d = exact_sqrt(mpz_class(v.get_den()));
    if (!d) return std::nullopt;
    mpq_class r(*n, *d);
    r.canonicalize();
    return r;
}

int valuation(const mpz_class& v, unsigned long p, int cap) {
    if (v == 0) return cap;
    mpz_class t = v;
    int k = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++k;
    }
    return k;
}

int valuation(const mpq_class& v, unsigned long p, int cap) {
    if (v == 0) return cap;
    return valuation(mpz_class(v.get_num()), p) - valuation(mpz_class(v.get_den()), p);
}

int factorial_valuation(unsigned long n, unsigned long p) {
    int k = 0;
    for (unsigned long q = p; q <= n; q *= p) {
        k += static_cast<int>(n / q);
        if (q > n / p) break;
    }
    return k;
}

mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class mod_div(const mpz_class& a, const mpz_class& b, const mpz_class& m) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("mod_div: denominator not invertible");
    }
    return mod_floor(a * inv, m);
}

int legendre(const mpz_class& a, unsigned long p) {
    mpz_class pp(p);
    return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

bool is_prime_small(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace lucasq
