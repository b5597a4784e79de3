#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace lucasq {

/// Nonnegative integer square root if `v` is a perfect square (0 included).
std::optional<mpz_class> exact_sqrt(const mpz_class& v);

/// Square root of a rational that is the square of a rational (0 included).
std::optional<mpq_class> exact_sqrt(const mpq_class& v);

/// v_p(v); returns `cap` for v == 0.
int valuation(const mpz_class& v, unsigned long p, int cap = 1 << 20);

/// v_p of a rational (numerator minus denominator); `cap` for zero.
int valuation(const mpq_class& v, unsigned long p, int cap = 1 << 20);

/// v_p(n!) by Legendre's formula.
int factorial_valuation(unsigned long n, unsigned long p);

mpz_class ipow(const mpz_class& base, unsigned long e);

/// Least nonnegative residue.
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

/// a/b mod m for b invertible mod m; throws std::domain_error otherwise.
mpz_class mod_div(const mpz_class& a, const mpz_class& b, const mpz_class& m);

/// Legendre symbol (a|p) for odd prime p, a reduced or not.
int legendre(const mpz_class& a, unsigned long p);

bool is_prime_small(unsigned long n);

std::string to_string(const mpq_class& q);

}  // namespace lucasq
