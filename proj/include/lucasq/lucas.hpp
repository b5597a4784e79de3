#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lucasq {

/// Coprime nonzero pair (P, Q) defining U_0 = 0, U_1 = 1, U_n = P U_{n-1} - Q U_{n-2}.
class LucasParams {
public:
    /// Throws std::invalid_argument unless P, Q are nonzero and coprime.
    LucasParams(mpz_class p, mpz_class q);

    const mpz_class& p() const { return p_; }
    const mpz_class& q() const { return q_; }

    friend bool operator==(const LucasParams& a, const LucasParams& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }
    /// Lexicographic on (P, Q).
    friend bool operator<(const LucasParams& a, const LucasParams& b) {
        return a.p_ != b.p_ ? a.p_ < b.p_ : a.q_ < b.q_;
    }

    std::string str() const;

private:
    mpz_class p_;
    mpz_class q_;
};

/// Integer square test. Zero yields root 0 but is not a □ (nonzero squares only).
struct SquareWitness {
    mpz_class value;
    std::optional<mpz_class> root;

    bool is_square() const { return root.has_value(); }
    bool is_nonzero_square() const { return root.has_value() && value != 0; }
};

SquareWitness square_root_if_square(const mpz_class& v);

/// U_n(P, Q) by the linear recurrence.
mpz_class lucas_u(const LucasParams& params, unsigned long n);

/// U_n(P, Q) by binary powering of the companion matrix [[P, -Q], [1, 0]].
mpz_class lucas_u_fast(const LucasParams& params, unsigned long n);

/// Same recurrence for arbitrary integer (P, Q), invariants not enforced.
mpz_class lucas_u_raw(const mpz_class& p, const mpz_class& q, unsigned long n);

/// P^2 in {0, Q, 2Q, 3Q, 4Q}: root ratio is a root of unity or the roots coincide.
bool is_degenerate(const LucasParams& params);

struct SearchHit {
    LucasParams params;
    mpz_class root;
    bool degenerate;
};

struct SearchResult {
    std::vector<SearchHit> squares;   // U_n a nonzero square
    std::vector<LucasParams> zeros;   // U_n == 0, reported apart from □
};

/// Every coprime nonzero (P, Q) with |P|, |Q| <= bound and U_n(P, Q) a nonzero square,
/// in lexicographic order. The box is split across OpenMP threads.
SearchResult search_square_terms(unsigned long n, long bound);

/// Single-threaded reference for search_square_terms.
SearchResult search_square_terms_serial(unsigned long n, long bound);

enum class Theorem2Kind { u3, u6 };

/// u3: (a, a^2 - b^2); u6: (3a^2b^2, (-a^8 + 12a^4b^4 - 9b^8)/2).
/// Throws std::invalid_argument with the reason when the pair is not admissible.
LucasParams theorem2_family(Theorem2Kind kind, const mpz_class& a, const mpz_class& b);

struct Theorem2Sample {
    Theorem2Kind kind;
    mpz_class a, b;
    LucasParams params;
    mpz_class value;  // U_3 or U_6
    bool holds;       // U_3 = b^2, resp. U_6 a nonzero square
};

/// `count` random admissible (a, b) with |a|, |b| <= bound drawn from a seeded generator.
std::vector<Theorem2Sample> theorem2_samples(Theorem2Kind kind, int count, unsigned long seed, long bound = 1000);

}  // namespace lucasq
