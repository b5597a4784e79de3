#include <doctest.h>

#include "lucasq/config.hpp"
#include "lucasq/numfield.hpp"
#include "lucasq/padic.hpp"

using namespace lucasq;

TEST_SUITE("numfield") {
    TEST_CASE("quadratic field arithmetic") {
        const NumberField& k = Registry::builtin().field("K");
        const NfElement a = k.generator();
        CHECK(a * a == k.scalar(3));
        const NfElement eps = k.unit("eps");
        CHECK(nf_norm(eps) == 1);
        CHECK(eps * eps.inverse() == k.one());
        const NfElement beta = k.element({mpq_class(1, 8), mpq_class(-1, 24)});
        CHECK(beta * k.from_ints({12, 4}) == k.one());
        CHECK(beta * k.from_ints({3, 1}) == k.scalar(mpq_class(1, 4)));
        CHECK(nf_trace(k.from_ints({5, 2})) == 10);
    }

    TEST_CASE("cubic field, units and Galois action") {
        const NumberField& l = Registry::builtin().field("L");
        const NfElement a = l.generator();
        CHECK(a * a * a == a * mpq_class(3) + l.one());
        CHECK(nf_norm(l.unit("eps1")) == 1);
        CHECK(nf_norm(l.unit("eps2")) == -1);
        CHECK(apply_sigma(a) == l.from_ints({-2, -1, 1}));
        CHECK(apply_sigma(a) * (a + l.one()) == -l.one());  // sigma(alpha) = -1/(1 + alpha)
        const NfElement x = l.element({mpq_class(2, 3), -5, mpq_class(7, 2)});
        CHECK(apply_sigma(apply_sigma(apply_sigma(x))) == x);
        CHECK(x * apply_sigma(x) * apply_sigma(apply_sigma(x)) == l.scalar(nf_norm(x)));
        CHECK(nf_norm(x) == nf_norm_resultant(x));
        CHECK(nf_trace(a) == 0);
    }

    TEST_CASE("real embeddings") {
        const NumberField& l = Registry::builtin().field("L");
        const auto roots = l.real_roots();
        REQUIRE(roots.size() == 3);
        CHECK(roots[2].midpoint() == doctest::Approx(1.8793852415));
        // -5 + alpha + alpha^2 at the largest root is about +0.4114.
        const auto v = real_embedding_values(l.from_ints({-5, 1, 1}));
        CHECK(v[2].midpoint() == doctest::Approx(0.4114).epsilon(1e-3));
        CHECK(embedding_sign(l.from_ints({-5, 1, 1}), 2) == 1);
        CHECK_THROWS_AS(embedding_sign(l.zero(), 0), std::domain_error);
    }

    TEST_CASE("lambda positivity") {
        const NumberField& l = Registry::builtin().field("L");
        const auto cands = lambda_candidates(l);
        REQUIRE(cands.size() == 4);
        for (const auto& c : cands) CHECK(nf_norm(c) == 1);
        const NfElement theta = l.from_ints({-5, 1, 1});
        const auto plus = positivity_filter(cands, required_lambda_signs(1, theta));
        REQUIRE(plus.size() == 2);
        CHECK(plus[0] == l.one());
        CHECK(plus[1] == l.generator());
        const auto minus = positivity_filter(cands, required_lambda_signs(-1, theta));
        REQUIRE(minus.size() == 1);
        CHECK(minus[0] == l.generator());
    }

    TEST_CASE("registry validation") {
        auto fields = nlohmann::json::parse(builtin_fields_json());
        auto curves = nlohmann::json::parse(builtin_curves_json());
        CHECK_NOTHROW(Registry::from_json(fields, curves));
        auto bad = curves;
        bad["curves"][0]["generator"]["y"] = {0, 4};
        CHECK_THROWS(Registry::from_json(fields, bad));
        auto bad_prime = curves;
        bad_prime["curves"][0]["prime"] = 11;  // x^2 - 3 splits mod 11
        CHECK_THROWS(Registry::from_json(fields, bad_prime));
        auto bad_sigma = fields;
        for (auto& f : bad_sigma["fields"]) {
            if (f["name"] == "L") f["sigma_images"][1] = {2, 1, -1};
        }
        CHECK_THROWS(Registry::from_json(bad_sigma, curves));
        CHECK_THROWS(Registry::builtin().curve_case("u7"));
    }
}

TEST_SUITE("padic") {
    TEST_CASE("inert primes") {
        CHECK(certify_inert(Registry::builtin().field("K"), 7));
        CHECK_FALSE(certify_inert(Registry::builtin().field("K"), 11));
        CHECK(certify_inert(Registry::builtin().field("L"), 2));
        CHECK_FALSE(certify_inert(Registry::builtin().field("L"), 3));
    }

    TEST_CASE("precision bookkeeping") {
        const NumberField& k = Registry::builtin().field("K");
        const auto a = padic_lift(k.from_ints({7, 14}), 7, 10);
        const auto b = padic_lift(k.from_ints({49, 0}), 7, 6);
        CHECK(a.valuation().value == 1);
        CHECK((a * b).precision() == std::min(10 + 2, 6 + 1));
        CHECK((a + b).precision() == 6);
        const auto c = a.divide_by_p_power(1);
        CHECK(c.precision() == 9);
        CHECK(c.is_unit());
        CHECK_THROWS_AS(a.divide_by_p_power(2), std::domain_error);
        CHECK_THROWS_AS(PadicNfElement::zero(&k, 7, 3).divide_by_p_power(4), PrecisionError);
    }

    TEST_CASE("inverse and exact lift agree") {
        const NumberField& l = Registry::builtin().field("L");
        const NfElement x = l.from_ints({3, -1, 5});
        const auto px = padic_lift(x, 2, 20);
        REQUIRE(px.is_unit());
        CHECK(px.inverse().congruent(padic_lift(x.inverse(), 2, 20)));
        CHECK((px * px.inverse()).congruent(PadicNfElement::one(&l, 2, 20)));
        CHECK_THROWS_AS(padic_lift(l.element({mpq_class(1, 2), 0, 0}), 2, 5), std::domain_error);
    }

    TEST_CASE("multiplication by coefficients with p in the denominator") {
        const NumberField& k = Registry::builtin().field("K");
        const auto x = padic_lift(k.from_ints({343, 49}), 7, 12);
        const auto y = x.mul_exact(k.element({mpq_class(1, 7), mpq_class(2, 49)}), 6);
        CHECK(y.precision() == 10);
        CHECK(y.congruent(padic_lift(k.from_ints({343, 49}) * k.element({mpq_class(1, 7), mpq_class(2, 49)}), 7,
                                     y.precision())));
        CHECK_THROWS_AS(padic_lift(k.from_ints({49, 7}), 7, 12).mul_exact(k.element({0, mpq_class(1, 49)}), 6),
                        std::domain_error);
        CHECK_THROWS_AS(x.mul_exact(k.element({mpq_class(1, 7 * 7 * 7), 0}), 2), PrecisionError);
    }
}
