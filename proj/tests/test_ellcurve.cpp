#include <doctest.h>

#include "lucasq/config.hpp"
#include "lucasq/ellcurve.hpp"

using namespace lucasq;

TEST_SUITE("ellcurve") {
    TEST_CASE("group law on E1") {
        const auto& cc = Registry::builtin().curve_case("u12");
        const auto& e = *cc.curve;
        const auto& p1 = cc.generator.point;
        const auto t0 = cc.torsion[1].point;
        const auto a = scalar_mul(e, 3, p1);
        const auto b = point_add(e, p1, t0);
        const auto c = scalar_mul(e, -2, p1);
        CHECK(same_point(point_add(e, point_add(e, a, b), c), point_add(e, a, point_add(e, b, c))));
        CHECK(same_point(point_add(e, a, b), point_add(e, b, a)));
        CHECK(point_add(e, a, point_negate(e, a)).is_infinity());
        CHECK(same_point(scalar_mul(e, 5, p1), point_add(e, scalar_mul(e, 2, p1), scalar_mul(e, 3, p1))));
        CHECK(e.model().contains(scalar_mul(e, 7, p1)));
        // P1 + (0,0) = (12 + 4a, -(36 + 12a))
        const NumberField& k = *cc.field;
        CHECK(b.x() == k.from_ints({12, 4}));
        CHECK(b.y() == k.from_ints({-36, -12}));
    }

    TEST_CASE("two-torsion") {
        for (const char* label : {"u12", "u9"}) {
            const auto& cc = Registry::builtin().curve_case(label);
            const auto tors = two_torsion(*cc.curve);
            REQUIRE(tors.size() == 4);
            for (const auto& t : cc.torsion) {
                bool found = false;
                for (const auto& s : tors) found = found || same_point(s, t.point);
                CHECK(found);
                CHECK(scalar_mul(*cc.curve, 2, t.point).is_infinity());
            }
        }
    }

    TEST_CASE("kernel multiples") {
        const auto& u12 = Registry::builtin().curve_case("u12");
        const auto k12 = kernel_multiple(*u12.curve, u12.generator.point, 7);
        CHECK(k12.m == 11);
        CHECK(k12.z_valuation == 1);
        CHECK(reduced_order(*u12.curve, u12.generator.point, 7) == 11);
        const auto& u9 = Registry::builtin().curve_case("u9");
        const auto k9 = kernel_multiple(*u9.curve, u9.generator.point, 2);
        CHECK(k9.m == 4);
        CHECK(k9.z_valuation == 2);
        CHECK(exact_valuation(z_coord(k9.q), 2) == 2);
    }

    TEST_CASE("reduction") {
        const auto& u12 = Registry::builtin().curve_case("u12");
        CHECK(u12.curve->good_reduction(7));
        CHECK(reduce_point(*u12.curve, u12.generator.point, 7).is_infinity() == false);
        const auto& u9 = Registry::builtin().curve_case("u9");
        CHECK_FALSE(u9.curve->good_reduction(2));
        CHECK(u9.curve->integral_at(2));
        CHECK(reduces_nonsingular(*u9.curve, u9.generator.point, 2));
    }

    TEST_CASE("singular and off-curve input") {
        const NumberField& q = Registry::builtin().field("Q");
        CHECK_THROWS_AS(WeierstrassCurve("cusp", q.zero(), q.zero(), q.zero(), q.zero(), q.zero()),
                        std::invalid_argument);
        const WeierstrassCurve e("37a", q.zero(), q.zero(), q.one(), -q.one(), q.zero());
        CHECK_NOTHROW(e.point(q.zero(), q.zero()));
        CHECK_THROWS(e.point(q.one(), q.one()));
        CHECK_THROWS_AS(z_coord(CurvePoint::infinity()), std::domain_error);
    }
}
