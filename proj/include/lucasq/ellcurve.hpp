#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lucasq/numfield.hpp"
#include "lucasq/padic.hpp"

namespace lucasq {

inline bool coeff_is_zero(const NfElement& c) { return c.is_zero(); }
inline bool coeff_is_zero(const PadicNfElement& c) { return c.is_zero_to_precision(); }

/// Affine point (x, y) or the point at infinity.
template <class C>
struct Point {
    std::optional<std::pair<C, C>> xy;

    static Point infinity() { return {}; }
    static Point affine(C x, C y) { return {std::make_pair(std::move(x), std::move(y))}; }
    bool is_infinity() const { return !xy.has_value(); }
    const C& x() const { return xy->first; }
    const C& y() const { return xy->second; }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a coefficient ring C.
template <class C>
struct Weierstrass {
    C a1, a2, a3, a4, a6;

    bool contains(const Point<C>& p) const {
        if (p.is_infinity()) return true;
        const C& x = p.x();
        const C& y = p.y();
        return coeff_is_zero(y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6));
    }

    Point<C> negate(const Point<C>& p) const {
        if (p.is_infinity()) return p;
        return Point<C>::affine(p.x(), -p.y() - a1 * p.x() - a3);
    }

    Point<C> add(const Point<C>& p, const Point<C>& q) const {
        if (p.is_infinity()) return q;
        if (q.is_infinity()) return p;
        const C& x1 = p.x();
        const C& y1 = p.y();
        const C& x2 = q.x();
        const C& y2 = q.y();
        C lambda, nu;
        if (coeff_is_zero(x1 - x2)) {
            if (coeff_is_zero(y1 + y2 + a1 * x2 + a3)) return Point<C>::infinity();
            const C num = x1 * x1 * mpz_class(3) + a2 * x1 * mpz_class(2) + a4 - a1 * y1;
            const C den = y1 * mpz_class(2) + a1 * x1 + a3;
            lambda = num * den.inverse();
        } else {
            lambda = (y2 - y1) * (x2 - x1).inverse();
        }
        nu = y1 - lambda * x1;
        const C x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
        const C y3 = -(lambda + a1) * x3 - nu - a3;
        return Point<C>::affine(x3, y3);
    }

    Point<C> multiply(long k, const Point<C>& p) const {
        if (k < 0) return multiply(-k, negate(p));
        Point<C> acc = Point<C>::infinity();
        Point<C> base = p;
        unsigned long e = static_cast<unsigned long>(k);
        while (e != 0) {
            if (e & 1UL) acc = add(acc, base);
            e >>= 1U;
            if (e != 0) base = add(base, base);
        }
        return acc;
    }
};

template <class C>
bool same_point(const Point<C>& a, const Point<C>& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    return coeff_is_zero(a.x() - b.x()) && coeff_is_zero(a.y() - b.y());
}

using CurvePoint = Point<NfElement>;
using ResiduePoint = Point<PadicNfElement>;

/// Weierstrass curve over Q(alpha) with nonzero discriminant.
class WeierstrassCurve {
public:
    WeierstrassCurve(std::string label, NfElement a1, NfElement a2, NfElement a3, NfElement a4,
                     NfElement a6);

    const std::string& label() const { return label_; }
    const NumberField& field() const { return model_.a1.field(); }
    const Weierstrass<NfElement>& model() const { return model_; }
    const NfElement& a1() const { return model_.a1; }
    const NfElement& a2() const { return model_.a2; }
    const NfElement& a3() const { return model_.a3; }
    const NfElement& a4() const { return model_.a4; }
    const NfElement& a6() const { return model_.a6; }
    const NfElement& discriminant() const { return disc_; }

    bool contains(const CurvePoint& p) const { return model_.contains(p); }
    CurvePoint point(NfElement x, NfElement y) const;

    /// Reduction of the model modulo an inert prime (residue-field coefficients).
    Weierstrass<PadicNfElement> reduced_model(unsigned long p) const;
    /// All coefficients p-integral.
    bool integral_at(unsigned long p) const;
    /// p-integral coefficients and nonzero reduced discriminant.
    bool good_reduction(unsigned long p) const;

private:
    std::string label_;
    Weierstrass<NfElement> model_;
    NfElement disc_;
};

CurvePoint point_add(const WeierstrassCurve& c, const CurvePoint& a, const CurvePoint& b);
CurvePoint point_negate(const WeierstrassCurve& c, const CurvePoint& a);
CurvePoint scalar_mul(const WeierstrassCurve& c, long k, const CurvePoint& a);

/// Points of order dividing 2 for y^2 = x^3 + a2 x^2 + a4 x with a split cubic.
/// Throws std::domain_error when the model has a1, a3, a6 != 0 or the quadratic factor does not split.
std::vector<CurvePoint> two_torsion(const WeierstrassCurve& c);

/// Reduction to the residue field of size p^d; infinity when x is not p-integral.
ResiduePoint reduce_point(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p);

/// Reduction of A is a nonsingular point of the reduced curve (infinity counts as nonsingular).
bool reduces_nonsingular(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p);

/// Order of the reduction of A in the group of nonsingular reduced points (at most q + 1 + 2 sqrt q).
/// Throws std::domain_error when A reduces to the singular point.
unsigned long reduced_order(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p);

struct KernelMultiple {
    unsigned long m;
    CurvePoint q;
    int z_valuation;
};

/// m = order of the reduction of A, doubled until v_p(z(mA)) >= r (r = 2 for p = 2, else 1).
KernelMultiple kernel_multiple(const WeierstrassCurve& c, const CurvePoint& a, unsigned long p);

/// z = -x/y; throws std::domain_error at infinity or for y = 0.
NfElement z_coord(const CurvePoint& a);

/// min over coordinates of v_p (valid for inert p); `cap` for zero.
int exact_valuation(const NfElement& a, unsigned long p, int cap = 1 << 20);

/// Exponential domain radius: 2 for p = 2, else 1.
inline int kernel_radius(unsigned long p) { return p == 2 ? 2 : 1; }

std::string point_str(const CurvePoint& a);

}  // namespace lucasq
