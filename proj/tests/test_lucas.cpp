#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "lucasq/arith.hpp"
#include "lucasq/lucas.hpp"

using namespace lucasq;

TEST_SUITE("lucas") {
    TEST_CASE("fibonacci terms") {
        const LucasParams fib(1, -1);
        CHECK(lucas_u(fib, 0) == 0);
        CHECK(lucas_u(fib, 1) == 1);
        CHECK(lucas_u(fib, 12) == 144);
        CHECK(lucas_u(fib, 50) == mpz_class("12586269025"));
    }

    TEST_CASE("closed form for P = 3, Q = 2") {
        // roots 1 and 2: U_n = 2^n - 1
        const LucasParams lp(3, 2);
        for (unsigned long n = 0; n < 80; ++n) CHECK(lucas_u(lp, n) == ipow(2, n) - 1);
    }

    TEST_CASE("matrix powering agrees with the recurrence") {
        for (long p = -7; p <= 7; ++p) {
            for (long q = -7; q <= 7; ++q) {
                if (p == 0 || q == 0 || std::gcd(p, q) != 1) continue;
                const LucasParams lp(p, q);
                for (unsigned long n : {2UL, 9UL, 12UL, 31UL, 64UL}) CHECK(lucas_u_fast(lp, n) == lucas_u(lp, n));
            }
        }
    }

    TEST_CASE("parameter invariants") {
        CHECK_THROWS_AS(LucasParams(0, 1), std::invalid_argument);
        CHECK_THROWS_AS(LucasParams(1, 0), std::invalid_argument);
        CHECK_THROWS_AS(LucasParams(2, 4), std::invalid_argument);
        CHECK_NOTHROW(LucasParams(-2, 1));
    }

    TEST_CASE("degeneracy") {
        CHECK(is_degenerate(LucasParams(2, 1)));
        CHECK(is_degenerate(LucasParams(1, 1)));
        CHECK(is_degenerate(LucasParams(-1, 1)));
        CHECK_FALSE(is_degenerate(LucasParams(1, -1)));
        CHECK_FALSE(is_degenerate(LucasParams(3, 2)));
    }

    TEST_CASE("square witness") {
        CHECK(square_root_if_square(144).is_nonzero_square());
        CHECK_FALSE(square_root_if_square(0).is_nonzero_square());
        CHECK(square_root_if_square(0).is_square());
        CHECK_FALSE(square_root_if_square(-4).is_square());
        CHECK_FALSE(square_root_if_square(145).is_square());
    }

    TEST_CASE("parallel search matches the serial reference") {
        for (unsigned long n : {9UL, 12UL, 5UL}) {
            const auto a = search_square_terms(n, 25);
            const auto b = search_square_terms_serial(n, 25);
            REQUIRE(a.squares.size() == b.squares.size());
            for (std::size_t i = 0; i < a.squares.size(); ++i) {
                CHECK(a.squares[i].params == b.squares[i].params);
                CHECK(a.squares[i].root == b.squares[i].root);
            }
            CHECK(a.zeros == b.zeros);
        }
    }

    TEST_CASE("zero terms are reported apart from squares") {
        const auto r = search_square_terms(12, 10);
        for (const auto& h : r.squares) CHECK(lucas_u(h.params, 12) != 0);
        for (const auto& z : r.zeros) CHECK(lucas_u(z, 12) == 0);
        CHECK(std::find(r.zeros.begin(), r.zeros.end(), LucasParams(1, 1)) != r.zeros.end());
    }

    TEST_CASE("theorem 2 families") {
        CHECK(theorem2_family(Theorem2Kind::u3, 3, 1) == LucasParams(3, 8));
        CHECK(lucas_u(theorem2_family(Theorem2Kind::u3, 3, 1), 3) == 1);
        CHECK_THROWS_AS(theorem2_family(Theorem2Kind::u6, 2, 1), std::invalid_argument);  // Q not integral
        CHECK_THROWS_AS(theorem2_family(Theorem2Kind::u3, 1, 1), std::invalid_argument);  // Q = 0
        const auto lp = theorem2_family(Theorem2Kind::u6, 1, 1);  // (3, 1)
        CHECK(lp == LucasParams(3, 1));
        CHECK(lucas_u(lp, 6) == 144);
        for (const auto& s : theorem2_samples(Theorem2Kind::u6, 20, 7)) CHECK(s.holds);
    }
}

TEST_SUITE("arith") {
    TEST_CASE("valuations and square roots") {
        CHECK(valuation(mpz_class(7 * 7 * 94), 7) == 2);
        CHECK(valuation(mpq_class(3, 56), 2) == -3);
        CHECK(valuation(mpz_class(0), 5, 9) == 9);
        CHECK(factorial_valuation(10, 2) == 8);
        CHECK(*exact_sqrt(mpq_class(9, 4)) == mpq_class(3, 2));
        CHECK_FALSE(exact_sqrt(mpq_class(2, 9)).has_value());
        CHECK(legendre(5, 7) == -1);
        CHECK(legendre(2, 7) == 1);
        CHECK(mod_floor(-3, 7) == 4);
        CHECK(mod_div(1, 3, 7) == 5);
    }
}
