#include <doctest.h>

#include <numeric>

#include "lucasq/arith.hpp"
#include "lucasq/descent.hpp"

using namespace lucasq;

namespace {

ConstraintSystem sys(std::initializer_list<Condition> c) { return {c}; }

bool same(const ConstraintSystem& a, const ConstraintSystem& b) {
    if (a.conditions.size() != b.conditions.size()) return false;
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
        if (a.conditions[i].form != b.conditions[i].form || a.conditions[i].multiplier != b.conditions[i].multiplier) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("descent") {
    TEST_CASE("factorizations") {
        for (long p = -9; p <= 9; ++p) {
            for (long q = -9; q <= 9; ++q) {
                if (p == 0 || q == 0 || std::gcd(p, q) != 1) continue;
                const LucasParams lp(p, q);
                const auto f = factor_u12(lp);
                CHECK(f[0] * f[1] * f[2] * f[3] * f[4] == lucas_u(lp, 12));
                CHECK(evaluate_form(Form::p2_q, p, q) * evaluate_form(Form::sextic, p, q) == lucas_u(lp, 9));
                const mpz_class g = pairwise_gcd_bound(lp);
                CHECK((g == 1 || g == 2));
                for (long m : {16L, 9L, 7L}) {
                    for (Form form : {Form::p, Form::p2_3q, Form::p2_q, Form::p2_2q, Form::quartic, Form::sextic}) {
                        CHECK(evaluate_form_mod(form, ((p % m) + m) % m, ((q % m) + m) % m, m) ==
                              mod_floor(evaluate_form(form, p, q), mpz_class(m)).get_si());
                    }
                }
            }
        }
    }

    TEST_CASE("system enumeration") {
        const auto s = enumerate_u12_systems();
        CHECK(s.left.size() == 24);
        CHECK(s.right.size() == 8);
    }

    TEST_CASE("left and right survivors") {
        const auto s = enumerate_u12_systems();
        const std::vector<ConstraintSystem> left_expected{
            sys({{Form::p, 1}, {Form::p2_3q, -2}, {Form::p2_q, -1}}),
            sys({{Form::p, -1}, {Form::p2_3q, -2}, {Form::p2_q, 1}}),
            sys({{Form::p, 6}, {Form::p2_3q, 3}, {Form::p2_q, 1}}),
            sys({{Form::p, 6}, {Form::p2_3q, -3}, {Form::p2_q, -1}}),
            sys({{Form::p, -3}, {Form::p2_3q, -6}, {Form::p2_q, 1}}),
            sys({{Form::p, 1}, {Form::p2_3q, 1}, {Form::p2_q, 2}}),
            sys({{Form::p, -3}, {Form::p2_3q, -3}, {Form::p2_q, 2}}),
        };
        std::vector<ConstraintSystem> left;
        for (const auto& x : s.left) {
            if (local_solvability(x).status == VerdictStatus::survives) left.push_back(x);
        }
        CHECK(left.size() == left_expected.size());
        for (const auto& e : left_expected) {
            CHECK(std::any_of(left.begin(), left.end(), [&](const ConstraintSystem& x) { return same(x, e); }));
        }
        std::vector<ConstraintSystem> right;
        for (const auto& x : s.right) {
            if (local_solvability(x).status == VerdictStatus::survives) right.push_back(x);
        }
        REQUIRE(right.size() == 3);
        CHECK(same(right[0], sys({{Form::p2_2q, 2}, {Form::quartic, 1}})));
        CHECK(same(right[1], sys({{Form::p2_2q, -1}, {Form::quartic, -2}})));
        CHECK(same(right[2], sys({{Form::p2_2q, 3}, {Form::quartic, 6}})));
    }

    TEST_CASE("verdicts are re-checkable and scheduling independent") {
        for (const auto& e : survival_report()) {
            const auto serial = local_solvability_serial(e.system);
            CHECK(serial.status == e.verdict.status);
            CHECK(serial.modulus == e.verdict.modulus);
            if (e.verdict.status == VerdictStatus::congruence_unsolvable) {
                CHECK_FALSE(congruence_solvable(e.system, *e.verdict.modulus));
            }
            if (e.verdict.witness) CHECK(e.system.satisfied_by(e.verdict.witness->first, e.verdict.witness->second));
        }
    }

    TEST_CASE("the Fibonacci pair lies on the last table row") {
        const auto table = surviving_u12_table();
        REQUIRE(table.size() == 4);
        CHECK(table[3].satisfied_by(1, -1));
        for (int i = 0; i < 3; ++i) CHECK_FALSE(table[static_cast<std::size_t>(i)].satisfied_by(1, -1));
    }

    TEST_CASE("real sign obstruction") {
        // P = -1 square and P^2 - 3Q = 2 square force Q < 0, then P^2 - Q > 0 cannot be negative.
        const auto v = local_solvability(sys({{Form::p, -1}, {Form::p2_3q, 2}, {Form::p2_q, -1}}));
        CHECK(v.status == VerdictStatus::real_unsolvable);
        CHECK_THROWS_AS(local_solvability(sys({{Form::p, 1}}), {}), std::invalid_argument);
    }

    TEST_CASE("genus-9 system") {
        CHECK(genus9_check(1));
        CHECK(genus9_check(-1));
        CHECK_FALSE(genus9_check(mpq_class(1, 2)));
        CHECK_FALSE(genus9_check(0));
    }

    TEST_CASE("norm-form split of U_9") {
        for (long delta : {3L, -3L}) {
            const auto s = u9_norm_split(delta);
            const NumberField& l = s.theta.field();
            for (long p = -6; p <= 6; ++p) {
                for (long r = -6; r <= 6; ++r) {
                    const NfElement x = l.scalar(s.p2_sign * p * p) + s.theta * mpq_class(r * r);
                    CHECK(nf_norm(x) == mpq_class(s.evaluate(p, r)));
                    // U_9 = (P^2 - Q) * C with C = delta * sextic on Q = P^2 - delta R^2
                    const mpz_class q = p * p - delta * r * r;
                    CHECK(evaluate_form(Form::sextic, p, q) == delta * s.evaluate(p, r));
                }
            }
        }
        CHECK(u9_norm_split(3).evaluate(1, 0) == 1);
        CHECK(u9_norm_split(3).evaluate(0, 1) == 9);
        CHECK(u9_norm_split(3).evaluate(2, 1) == 1);
        CHECK_THROWS_AS(u9_norm_split(1), std::invalid_argument);
    }

    TEST_CASE("small point search") {
        const auto hits2 = small_point_search(u12_delta_curve(2), 20);
        CHECK(std::any_of(hits2.begin(), hits2.end(), [](const PointHit& h) {
            return h.x == -1 && !h.zero_value && !h.torsion && h.value == 18;
        }));
        const auto hits1 = small_point_search(u12_delta_curve(1), 20);
        for (const auto& h : hits1) CHECK(h.torsion);
        const auto serial_like = small_point_search(u12_delta_curve(2), 20);
        REQUIRE(serial_like.size() == hits2.size());
        for (std::size_t i = 0; i < hits2.size(); ++i) CHECK(serial_like[i].x == hits2[i].x);
        CHECK(is_multiple_of_square(mpq_class(18), 2));
        CHECK_FALSE(is_multiple_of_square(mpq_class(-18), 2));
        CHECK_FALSE(is_multiple_of_square(mpq_class(0), 1));
    }

    TEST_CASE("report json") {
        const auto j = survival_report_json();
        CHECK(j["table"].size() == 4);
        CHECK(j["systems"].size() == 24 + 8 + 7 * 3);
    }
}
