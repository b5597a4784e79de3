#include "lucasq/ellcurve.hpp"

#include <algorithm>
#include <cmath>

#include "lucasq/arith.hpp"

namespace lucasq {

WeierstrassCurve::WeierstrassCurve(std::string label, NfElement a1, NfElement a2, NfElement a3,
                                   NfElement a4, NfElement a6)
    : label_(std::move(label)), model_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    const auto& m = model_;
    const NfElement b2 = m.a1 * m.a1 + mpq_class(4) * m.a2;
    const NfElement b4 = mpq_class(2) * m.a4 + m.a1 * m.a3;
    const NfElement b6 = m.a3 * m.a3 + mpq_class(4) * m.a6;
    const NfElement b8 = m.a1 * m.a1 * m.a6 + mpq_class(4) * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
                         m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
    disc_ = -(b2 * b2 * b8) - mpq_class(8) * b4 * b4 * b4 - mpq_class(27) * b6 * b6 +
            mpq_class(9) * b2 * b4 * b6;
    if (disc_.is_zero()) throw std::invalid_argument("WeierstrassCurve " + label_ + ": singular model");
}

CurvePoint WeierstrassCurve::point(NfElement x, NfElement y) const {
    CurvePoint p = CurvePoint::affine(std::move(x), std::move(y));
    if (!contains(p)) throw std::invalid_argument("point " + point_str(p) + " is not on " + label_);
    return p;
}

Weierstrass<PadicNfElement> WeierstrassCurve::reduced_model(unsigned long p) const {
    return {padic_lift(model_.a1, p, 1), padic_lift(model_.a2, p, 1), padic_lift(model_.a3, p, 1),
            padic_lift(model_.a4, p, 1), padic_lift(model_.a6, p, 1)};
}

bool WeierstrassCurve::integral_at(unsigned long p) const {
    for (const NfElement* a : {&model_.a1, &model_.a2, &model_.a3, &model_.a4, &model_.a6}) {
        if (exact_valuation(*a, p) < 0) return false;
    }
    return true;
}

bool WeierstrassCurve::good_reduction(unsigned long p) const {
    return integral_at(p) && exact_valuation(disc_, p) == 0;
}

CurvePoint point_add(const WeierstrassCurve& c, const CurvePoint& a, const CurvePoint& b) {
    return c.model().add(a, b);
}

CurvePoint point_negate(const WeierstrassCurve& c, const CurvePoint& a) { return c.model().negate(a); }

CurvePoint scalar_mul(const WeierstrassCurve& c, long k, const CurvePoint& a) {
    return c.model().multiply(k, a);
}

std::vector<CurvePoint> two_torsion(const WeierstrassCurve& c) {
    if (!c.a1().is_zero() || !c.a3().is_zero() || !c.a6().is_zero()) {
        throw std::domain_error("two_torsion: expected y^2 = x(x^2 + a2 x + a4)");
    }
    const NumberField& k = c.field();
    // Roots of x^2 + a2 x + a4: (-a2 +- sqrt(a2^2 - 4 a4)) / 2, the square root searched as
    // an element with small integer coordinates.
    const NfElement disc = c.a2() * c.a2() - mpq_class(4) * c.a4();
    std::optional<NfElement> root;
    const int d = k.degree();
    const long span = 12;
    std::vector<long> idx(static_cast<std::size_t>(d), -span);
    while (!root) {
        std::vector<mpq_class> coords;
        for (long v : idx) coords.emplace_back(v);
        const NfElement s = k.element(coords);
        if (s * s == disc) root = s;
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] > span) idx[i++] = -span;
        if (i == idx.size()) break;
    }
    if (!root) throw std::domain_error("two_torsion: quadratic factor does not split with small coordinates");
    const NfElement e1 = (-c.a2() + *root) * mpq_class(1, 2);
    const NfElement e2 = (-c.a2() - *root) * mpq_class(1, 2);
    std::vector<CurvePoint> out{CurvePoint::infinity(), c.point(k.zero(), k.zero()),
                                c.point(e1, k.zero()), c.point(e2, k.zero())};
    return out;
}

ResiduePoint reduce_point(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p) {
    if (a.is_infinity()) return ResiduePoint::infinity();
    if (exact_valuation(a.x(), p) < 0) return ResiduePoint::infinity();
    (void)c;
    return ResiduePoint::affine(padic_lift(a.x(), p, 1), padic_lift(a.y(), p, 1));
}

bool reduces_nonsingular(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p) {
    const ResiduePoint r = reduce_point(c, a, p);
    if (r.is_infinity()) return true;
    const auto m = c.reduced_model(p);
    const PadicNfElement fy = r.y() * mpz_class(2) + m.a1 * r.x() + m.a3;
    const PadicNfElement fx = m.a1 * r.y() - r.x() * r.x() * mpz_class(3) - m.a2 * r.x() * mpz_class(2) - m.a4;
    return !(fy.is_zero_to_precision() && fx.is_zero_to_precision());
}

unsigned long reduced_order(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p) {
    const auto model = c.reduced_model(p);
    const ResiduePoint r = reduce_point(c, a, p);
    if (r.is_infinity()) return 1;
    if (!reduces_nonsingular(c, a, p)) throw std::domain_error("reduced_order: reduction is singular");
    const double q = std::pow(static_cast<double>(p), c.field().degree());
    const auto hasse = static_cast<unsigned long>(q + 1 + 2 * std::sqrt(q)) + 1;
    ResiduePoint acc = r;
    for (unsigned long m = 1; m <= hasse; ++m) {
        if (acc.is_infinity()) return m;
        acc = model.add(acc, r);
    }
    throw std::logic_error("reduced_order: exceeded the Hasse bound");
}

KernelMultiple kernel_multiple(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p) {
    unsigned long m = reduced_order(c, a, p);
    CurvePoint q = scalar_mul(c, static_cast<long>(m), a);
    const int r = kernel_radius(p);
    while (true) {
        if (q.is_infinity()) throw std::domain_error("kernel_multiple: point is torsion");
        const int v = exact_valuation(z_coord(q), p);
        if (v >= r) return {m, q, v};
        m *= 2;
        q = point_add(c, q, q);
    }
}

NfElement z_coord(const CurvePoint& a) {
    if (a.is_infinity()) throw std::domain_error("z_coord: point at infinity");
    if (a.y().is_zero()) throw std::domain_error("z_coord: y = 0");
    return -(a.x() / a.y());
}

int exact_valuation(const NfElement& a, unsigned long p, int cap) {
    int v = cap;
    for (const auto& q : a.coords()) {
        if (q != 0) v = std::min(v, valuation(q, p));
    }
    return v;
}

std::string point_str(const CurvePoint& a) {
    if (a.is_infinity()) return "O";
    return "(" + a.x().str() + ", " + a.y().str() + ")";
}

}  // namespace lucasq
