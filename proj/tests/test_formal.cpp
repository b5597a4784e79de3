#include <doctest.h>

#include <fstream>
#include <random>

#include "lucasq/arith.hpp"
#include "lucasq/config.hpp"
#include "lucasq/formal.hpp"
#include "test_util.hpp"

using namespace lucasq;

namespace {

PadicNfElement random_kernel_element(std::mt19937_64& rng, const NumberField* f, unsigned long p, int r, int n) {
    std::vector<mpz_class> c;
    const mpz_class mod = ipow(mpz_class(p), static_cast<unsigned long>(n - r));
    for (int i = 0; i < f->degree(); ++i) {
        mpz_class x = static_cast<unsigned long>(rng() >> 1);
        x = mod_floor(x * ipow(mpz_class(p), static_cast<unsigned long>(r)), mod * ipow(mpz_class(p), r));
        c.push_back(x);
    }
    return {f, p, n, c};
}

}  // namespace

TEST_SUITE("formal") {
    TEST_CASE("parametrization satisfies the curve") {
        for (const char* label : {"u12", "u9"}) {
            const auto& c = testing::shared_case(label);
            const auto res = curve_identity_residual(c.formal_group());
            for (std::size_t k = 0; k < res.series.order(); ++k) CHECK(res.series[k].is_zero());
        }
    }

    TEST_CASE("group law identities hold exactly") {
        for (const char* label : {"u12", "u9"}) {
            const auto& fg = testing::shared_case(label).formal_group();
            const auto& f = fg.law();
            for (std::size_t i = 0; i < f.order(); ++i) {
                CHECK(f.coeff(i, 0) == (i == 1 ? fg.curve().field().one() : fg.curve().field().zero()));
                for (std::size_t j = 0; i + j < f.order(); ++j) CHECK(f.coeff(i, j) == f.coeff(j, i));
            }
            // log' = omega, exp(log z) = z
            const auto comp = fg.exp().compose(fg.log());
            for (std::size_t k = 0; k < comp.order(); ++k) {
                CHECK(comp[k] == (k == 1 ? fg.curve().field().one() : fg.curve().field().zero()));
            }
        }
    }

    TEST_CASE("law against exact addition with a1, a3 nonzero") {
        const NumberField& q = Registry::builtin().field("Q");
        const WeierstrassCurve e("t", q.one(), q.zero(), q.one(), q.zero(), q.scalar(2));
        const auto pt = e.point(q.one(), q.one());
        const FormalGroup fg(e, 12);
        for (unsigned long p : {3UL, 5UL, 7UL, 13UL}) {
            const auto km = kernel_multiple(e, pt, p);
            const auto q2 = scalar_mul(e, 2, km.q);
            const auto sum = point_add(e, km.q, q2);
            const auto z = formal_add(fg, padic_lift(z_coord(km.q), p, 12), padic_lift(z_coord(q2), p, 12));
            CHECK(z.congruent(padic_lift(z_coord(sum), p, z.precision())));
            const auto neg = formal_negate(fg, padic_lift(z_coord(km.q), p, 12));
            CHECK(neg.congruent(padic_lift(z_coord(point_negate(e, km.q)), p, neg.precision())));
        }
    }

    TEST_CASE("log, exp and the law at random kernel points") {
        std::mt19937_64 rng(2024);
        for (const char* label : {"u12", "u9"}) {
            const auto& c = testing::shared_case(label);
            const auto& fg = c.formal_group();
            const unsigned long p = c.data().prime;
            const int r = kernel_radius(p);
            for (int trial = 0; trial < 10; ++trial) {
                const auto a = random_kernel_element(rng, c.data().field, p, r, c.precision().n);
                const auto b = random_kernel_element(rng, c.data().field, p, r, c.precision().n);
                const auto s = formal_add(fg, a, b);
                CHECK((formal_log(fg, s) - formal_log(fg, a) - formal_log(fg, b)).is_zero_to_precision());
                CHECK(formal_exp(fg, formal_log(fg, a)).congruent(a));
                CHECK(formal_add(fg, a, formal_negate(fg, a)).is_zero_to_precision());
            }
        }
    }

    TEST_CASE("z of multiples of Q") {
        const auto& c = testing::shared_case("u12");
        const auto zq = padic_lift(c.zq(), 7, c.precision().n);
        const auto ns = z_of_multiple(c.formal_group(), zq, 8);
        for (long n : {-2L, -1L, 1L, 2L, 3L}) {
            const auto exact = z_coord(scalar_mul(c.curve(), n, c.kernel().q));
            const auto approx = ns.evaluate(n);
            CHECK(approx.congruent(padic_lift(exact, 7, approx.precision())));
        }
    }
}

TEST_SUITE("strassman") {
    TEST_CASE("bounds") {
        const mpz_class m = ipow(mpz_class(7), 8);
        const std::vector<PadicInt> s{{0, 8, 7}, {7 * 94, 8, 7}, {49 * 40, 8, 7}, {343 * 6, 8, 7}};
        const auto cert = strassman_bound(s, {true, false, false, false}, 8);
        CHECK(cert.bound == 1);
        CHECK(cert.min_valuation == 1);
        CHECK(strassman_bound({{0, 5, 2}, {1, 5, 2}}, {true, false}, 5).bound == 1);
        const std::vector<PadicInt> u9{{0, 20, 2}, {64 * 7, 20, 2}, {64 * 3, 20, 2}, {0, 20, 2}, {0, 20, 2}};
        CHECK(strassman_bound(u9, {true, false, false, false, false}, 7).bound == 2);
        CHECK_THROWS_AS(strassman_bound(u9, {true, false, false, false, false}, 6), PrecisionError);
        CHECK_THROWS_AS(strassman_bound({{0, 3, 7}, {0, 3, 7}}, {false, false}, 10), PrecisionError);
        (void)m;
    }
}

TEST_SUITE("theta") {
    TEST_CASE("negative-degree terms cancel and exact constant terms match") {
        const auto& c = testing::shared_case("u12");
        const auto cosets = enumerate_cosets(c);
        for (const char* label : {"P1+(0,0)", "2P1", "-5P1+(3+a,0)", "(4a,0)"}) {
            const auto& k = testing::find_coset(cosets, c, label);
            const auto th = theta_series(c.formal_group(), c.data().beta, k.base, c.zq(), 7,
                                         {c.precision().n, c.precision().j});
            CHECK(th.kind == ThetaKind::beta_x);
            CHECK(th.evaluate(0).congruent(padic_lift(c.data().beta * k.base.x(), 7, th.evaluate(0).precision())));
        }
    }

    TEST_CASE("insufficient series order is refused") {
        const auto& cc = Registry::builtin().curve_case("u12");
        const ChabautyCase small(cc, PrecisionDefaults{12, 6, 8});
        CHECK_THROWS(theta_series(small.formal_group(), cc.beta, cc.generator.point, small.zq(), 7, {12, 8}));
    }

    TEST_CASE("golden series") {
        std::ifstream in(LUCASQ_GOLDEN_DIR "/theta_series.json");
        REQUIRE(in.good());
        const auto golden = nlohmann::json::parse(in);
        nlohmann::json dump = nlohmann::json::array();
        for (const auto& g : golden["series"]) {
            const auto& c = testing::shared_case(g["case"].get<std::string>());
            const auto cosets = enumerate_cosets(c);
            const NfElement beta = g["beta"] == "one" ? c.data().field->one() : c.data().beta;
            const unsigned long p = c.data().prime;
            int matches = 0;
            for (const auto& base_label : g["bases"]) {
                const auto& k = testing::find_coset(cosets, c, base_label.get<std::string>());
                const auto th =
                    theta_series(c.formal_group(), beta, k.base, c.zq(), p, {c.precision().n, c.precision().j});
                dump.push_back({{"name", g["name"]}, {"base", base_label}, {"series", series_dump(th)}});
                const int comp = g["component"].get<int>();
                bool ok = true;
                for (const auto& t : g["terms"]) {
                    const PadicInt a = th.component(comp, t["degree"].get<int>());
                    const auto v = a.valuation();
                    ok = ok && !v.lower_bound_only && v.value == t["valuation"].get<int>() &&
                         mod_floor(a.unit_part(), mpz_class(p)) == t["unit_mod_p"].get<long>();
                }
                if (g.contains("vanishing")) {
                    for (const auto& d : g["vanishing"]) ok = ok && th.exact_zero[comp][d.get<std::size_t>()];
                }
                if (g.contains("at_least")) {
                    for (const auto& t : g["at_least"]) {
                        ok = ok && th.component(comp, t["degree"].get<int>()).valuation().value >=
                                       t["valuation"].get<int>();
                    }
                }
                matches += ok ? 1 : 0;
            }
            INFO(g["name"].get<std::string>());
            CHECK(matches == 1);
        }
        std::ofstream out("theta_series_computed.json");
        out << dump.dump(2) << "\n";
    }
}
