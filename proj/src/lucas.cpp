#include "lucasq/lucas.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lucasq/arith.hpp"

namespace lucasq {

LucasParams::LucasParams(mpz_class p, mpz_class q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_ == 0 || q_ == 0) throw std::invalid_argument("LucasParams: P and Q must be nonzero");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    if (g != 1) throw std::invalid_argument("LucasParams: gcd(P, Q) != 1");
}

std::string LucasParams::str() const { return "(" + p_.get_str() + "," + q_.get_str() + ")"; }

SquareWitness square_root_if_square(const mpz_class& v) { return {v, exact_sqrt(v)}; }

mpz_class lucas_u_raw(const mpz_class& p, const mpz_class& q, unsigned long n) {
    if (n == 0) return 0;
    mpz_class prev = 0, cur = 1;
    for (unsigned long k = 2; k <= n; ++k) {
        mpz_class next = p * cur - q * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

mpz_class lucas_u(const LucasParams& params, unsigned long n) {
    return lucas_u_raw(params.p(), params.q(), n);
}

namespace {

struct Mat2 {
    mpz_class a, b, c, d;
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

}  // namespace

mpz_class lucas_u_fast(const LucasParams& params, unsigned long n) {
    // M^n = [[U_{n+1}, -Q U_n], [U_n, -Q U_{n-1}]]
    Mat2 result{1, 0, 0, 1};
    Mat2 base{params.p(), -params.q(), 1, 0};
    for (unsigned long e = n; e != 0; e >>= 1) {
        if (e & 1UL) result = mul(result, base);
        base = mul(base, base);
    }
    return result.c;
}

bool is_degenerate(const LucasParams& params) {
    const mpz_class p2 = params.p() * params.p();
    for (int k = 0; k <= 4; ++k) {
        if (p2 == k * params.q()) return true;
    }
    return false;
}

namespace {

bool coprime(long p, long q) {
    while (q != 0) {
        long t = p % q;
        p = q;
        q = t;
    }
    return p == 1 || p == -1;
}

void scan_row(unsigned long n, long p, long bound, SearchResult& out) {
    for (long q = -bound; q <= bound; ++q) {
        if (q == 0 || !coprime(p, q)) continue;
        const mpz_class u = lucas_u_raw(p, q, n);
        if (u == 0) {
            out.zeros.emplace_back(p, q);
            continue;
        }
        if (sgn(u) < 0) continue;
        if (auto r = exact_sqrt(u)) {
            LucasParams lp(p, q);
            const bool deg = is_degenerate(lp);
            out.squares.push_back({std::move(lp), *r, deg});
        }
    }
}

void sort_result(SearchResult& r) {
    std::sort(r.squares.begin(), r.squares.end(),
              [](const SearchHit& a, const SearchHit& b) { return a.params < b.params; });
    std::sort(r.zeros.begin(), r.zeros.end());
}

void check_search_args(unsigned long n, long bound) {
    if (n < 2) throw std::invalid_argument("search_square_terms: n must be >= 2");
    if (bound < 1) throw std::invalid_argument("search_square_terms: bound must be >= 1");
}

}  // namespace

SearchResult search_square_terms_serial(unsigned long n, long bound) {
    check_search_args(n, bound);
    SearchResult out;
    for (long p = -bound; p <= bound; ++p) {
        if (p != 0) scan_row(n, p, bound, out);
    }
    sort_result(out);
    return out;
}

SearchResult search_square_terms(unsigned long n, long bound) {
    check_search_args(n, bound);
    const long rows = 2 * bound + 1;
    std::vector<SearchResult> per_row(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < rows; ++i) {
        const long p = i - bound;
        if (p != 0) scan_row(n, p, bound, per_row[static_cast<std::size_t>(i)]);
    }
    SearchResult out;
    for (auto& r : per_row) {
        for (auto& h : r.squares) out.squares.push_back(std::move(h));
        for (auto& z : r.zeros) out.zeros.push_back(std::move(z));
    }
    sort_result(out);
    return out;
}

LucasParams theorem2_family(Theorem2Kind kind, const mpz_class& a, const mpz_class& b) {
    if (kind == Theorem2Kind::u3) {
        const mpz_class q = a * a - b * b;
        if (a == 0 || q == 0) throw std::invalid_argument("u3 family: P or Q is zero");
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
        if (g != 1) throw std::invalid_argument("u3 family: gcd(P, Q) != 1");
        return {a, q};
    }
    const mpz_class a4 = ipow(a, 4), b4 = ipow(b, 4);
    const mpz_class num = -a4 * a4 + 12 * a4 * b4 - 9 * b4 * b4;
    if (mpz_odd_p(num.get_mpz_t()) != 0) {
        throw std::invalid_argument("u6 family: Q = (-a^8 + 12a^4b^4 - 9b^8)/2 is not integral");
    }
    const mpz_class p = 3 * a * a * b * b;
    const mpz_class q = num / 2;
    if (p == 0 || q == 0) throw std::invalid_argument("u6 family: P or Q is zero");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("u6 family: gcd(P, Q) != 1");
    return {p, q};
}

std::vector<Theorem2Sample> theorem2_samples(Theorem2Kind kind, int count, unsigned long seed, long bound) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Theorem2Sample> out;
    while (static_cast<int>(out.size()) < count) {
        const mpz_class a = dist(rng), b = dist(rng);
        std::optional<LucasParams> lp;
        try {
            lp = theorem2_family(kind, a, b);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const unsigned long n = kind == Theorem2Kind::u3 ? 3 : 6;
        const mpz_class v = lucas_u(*lp, n);
        const bool holds = kind == Theorem2Kind::u3 ? v == b * b : (v != 0 && exact_sqrt(v).has_value());
        out.push_back({kind, a, b, *lp, v, holds});
    }
    return out;
}

}  // namespace lucasq
