#include "lucasq/formal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lucasq/arith.hpp"

namespace lucasq {

namespace {

Series<NfElement> monomial(const NumberField& f, std::size_t k, std::size_t order) {
    Series<NfElement> s(f.zero(), order);
    if (k < order) s.at(k) = f.one();
    return s;
}

/// floor(log_p k) for k >= 1.
int floor_log(unsigned long k, unsigned long p) {
    int e = 0;
    for (unsigned long q = p; q <= k; q *= p) ++e;
    return e;
}

int ceil_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return static_cast<int>(q);
}

/// Truncated product of n-series coefficient vectors (degrees 0..J).
std::vector<PadicNfElement> nmul(const std::vector<PadicNfElement>& a, const std::vector<PadicNfElement>& b) {
    const std::size_t n = a.size();
    std::vector<PadicNfElement> r;
    r.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        PadicNfElement acc = a[0] * b[k];
        for (std::size_t i = 1; i <= k; ++i) acc += a[i] * b[k - i];
        r.push_back(std::move(acc));
    }
    return r;
}

std::vector<PadicNfElement> nconst(const PadicNfElement& c, std::size_t n) {
    std::vector<PadicNfElement> r(n, PadicNfElement::zero(c.field_ptr(), c.prime(), c.precision()));
    r[0] = c;
    return r;
}

void cap_all(std::vector<PadicNfElement>& v, int cap) {
    for (auto& c : v) c = c.with_precision(cap);
}

int certified_valuation(const PadicNfElement& a, const char* what) {
    const auto v = a.valuation();
    if (v.lower_bound_only) {
        throw PrecisionError(std::string(what) + ": value is zero to working precision", a.precision() + 4);
    }
    return v.value;
}

}  // namespace

Series<NfElement> w_series(const WeierstrassCurve& c, int order) {
    const NumberField& f = c.field();
    const auto n = static_cast<std::size_t>(order);
    const Series<NfElement> z = monomial(f, 1, n);
    const Series<NfElement> z3 = monomial(f, 3, n);
    Series<NfElement> w(f.zero(), n);
    for (int it = 0; it <= order; ++it) {
        const Series<NfElement> zw = z * w;
        const Series<NfElement> ww = w * w;
        Series<NfElement> next = z3;
        if (!c.a1().is_zero()) next += zw.scaled(c.a1());
        if (!c.a2().is_zero()) next += (z * zw).scaled(c.a2());
        if (!c.a3().is_zero()) next += ww.scaled(c.a3());
        if (!c.a4().is_zero()) next += (z * ww).scaled(c.a4());
        if (!c.a6().is_zero()) next += (ww * w).scaled(c.a6());
        const bool stable = next.coeffs() == w.coeffs();
        w = std::move(next);
        if (stable) break;
    }
    return w;
}

FormalGroup::FormalGroup(const WeierstrassCurve& curve, int order) : curve_(&curve), order_(order) {
    if (order < 4) throw std::invalid_argument("FormalGroup: order must be at least 4");
    const NumberField& f = curve.field();
    const auto m = static_cast<std::size_t>(order);
    w_ = w_series(curve, order + 3);
    const Series<NfElement> wz = w_.shifted_down(3);  // order M
    u_ = wz.inverse();

    // omega = (w - z w') / (w (-2 + a1 z + a3 w)).
    Series<NfElement> zdw(f.zero(), w_.order());
    for (std::size_t k = 0; k < w_.order(); ++k) zdw.at(k) = w_[k] * mpq_class(static_cast<long>(k));
    const Series<NfElement> num = (w_ - zdw).shifted_down(3);
    Series<NfElement> tail = monomial(f, 0, m).scaled(f.scalar(-2)) + monomial(f, 1, m).scaled(curve.a1()) +
                             w_.truncated(m).scaled(curve.a3());
    omega_ = num * (wz * tail).inverse();

    log_ = Series<NfElement>(f.zero(), m);
    for (std::size_t k = 1; k < m; ++k) log_.at(k) = omega_[k - 1] * mpq_class(1, static_cast<long>(k));
    exp_ = log_.revert();

    // iota(z) = z / (-1 + a1 z + a3 w).
    const Series<NfElement> neg = monomial(f, 0, m).scaled(f.scalar(-1)) + monomial(f, 1, m).scaled(curve.a1()) +
                                  w_.truncated(m).scaled(curve.a3());
    iota_ = neg.inverse().shifted_up(1);
}

const BivariateSeries<NfElement>& FormalGroup::law() const {
    if (law_) return *law_;
    const NumberField& f = curve_->field();
    const auto m = static_cast<std::size_t>(order_);
    using B = BivariateSeries<NfElement>;
    // Chord through (z1, w1), (z2, w2): w = lambda z + nu.
    B lambda(f.zero(), m);
    for (std::size_t n = 1; n <= m; ++n) {
        const NfElement& an = w_[n];
        if (an.is_zero()) continue;
        for (std::size_t i = 0; i + 1 <= n && i + (n - 1 - i) < m; ++i) lambda.at(i, n - 1 - i) += an;
    }
    const B z1 = B::from_first(monomial(f, 1, m), m);
    const B z2 = B::from_second(monomial(f, 1, m), m);
    const B w1 = B::from_first(w_.truncated(m), m);
    const B nu = w1 - lambda * z1;
    const auto& c = *curve_;
    // Third root of the cubic in z cut out by the chord.
    B numer(f.zero(), m);
    B denom(f.zero(), m);
    denom.at(0, 0) = f.one();
    const B l2 = lambda * lambda;
    if (!c.a1().is_zero()) numer += lambda.scaled(c.a1());
    if (!c.a2().is_zero()) {
        numer += nu.scaled(c.a2());
        denom += lambda.scaled(c.a2());
    }
    if (!c.a3().is_zero()) numer += l2.scaled(c.a3());
    if (!c.a4().is_zero()) {
        numer += (lambda * nu).scaled(c.a4() * mpq_class(2));
        denom += l2.scaled(c.a4());
    }
    if (!c.a6().is_zero()) {
        numer += (l2 * nu).scaled(c.a6() * mpq_class(3));
        denom += (l2 * lambda).scaled(c.a6());
    }
    const B z3 = -z1 - z2 - numer * denom.inverse();
    law_ = std::make_unique<B>(B::compose(iota_, z3));
    return *law_;
}

LaurentSeries<NfElement> curve_identity_residual(const FormalGroup& fg) {
    // Multiply through by z^6: with x = z^-2 u, y = -z^-3 u every term becomes a power series.
    const auto& c = fg.curve();
    const NumberField& f = c.field();
    const auto m = fg.u().order();
    const Series<NfElement>& u = fg.u();
    const Series<NfElement> z = monomial(f, 1, m);
    const Series<NfElement> one = monomial(f, 0, m);
    // y^2 z^6 = u^2; a1 x y z^6 = -a1 z u^2; a3 y z^6 = -a3 z^3 u;
    // x^3 z^6 = u^3; a2 x^2 z^6 = a2 z^2 u^2; a4 x z^6 = a4 z^4 u; a6 z^6.
    const Series<NfElement> u2 = u * u;
    Series<NfElement> lhs = u2 - u2.shifted_up(1).scaled(c.a1()) - u.shifted_up(3).scaled(c.a3());
    Series<NfElement> rhs = u2 * u + u2.shifted_up(2).scaled(c.a2()) + u.shifted_up(4).scaled(c.a4()) +
                            one.shifted_up(6).scaled(c.a6());
    return {-6, lhs - rhs};
}

PadicNfElement eval_exact_series(const Series<NfElement>& s, const PadicNfElement& x, int tail_valuation,
                                 int max_loss) {
    PadicNfElement acc = PadicNfElement::zero(x.field_ptr(), x.prime(), x.precision() + 4 * static_cast<int>(s.order()));
    PadicNfElement pw = PadicNfElement::one(x.field_ptr(), x.prime(), x.precision() + 4 * static_cast<int>(s.order()));
    for (std::size_t k = 0; k < s.order(); ++k) {
        if (k > 0) pw = pw * x;
        if (s[k].is_zero()) continue;
        acc += pw.mul_exact(s[k], max_loss);
    }
    return acc.with_precision(tail_valuation);
}

PadicNfElement formal_log(const FormalGroup& fg, const PadicNfElement& z) {
    const int v = certified_valuation(z, "formal_log");
    if (v < 1) throw std::domain_error("formal_log: argument outside the kernel of reduction");
    const int m = fg.order();
    const int tail = m * v - floor_log(static_cast<unsigned long>(m), z.prime());
    return eval_exact_series(fg.log(), z, tail, z.precision() / 2);
}

PadicNfElement formal_exp(const FormalGroup& fg, const PadicNfElement& t) {
    const auto vv = t.valuation();
    const int r = kernel_radius(t.prime());
    if (vv.lower_bound_only) return t;  // exp(0) = 0 to the same precision
    if (vv.value < r) throw std::domain_error("formal_exp: argument outside p^r Z_p[alpha]");
    const int m = fg.order();
    const long p1 = static_cast<long>(t.prime()) - 1;
    const int tail = ceil_div(static_cast<long>(m) * vv.value * p1 - (m - 1), p1);
    return eval_exact_series(fg.exp(), t, tail, t.precision() / 2);
}

PadicNfElement formal_add(const FormalGroup& fg, const PadicNfElement& z1, const PadicNfElement& z2) {
    const auto& law = fg.law();
    const int m = fg.order();
    const int v = std::min(z1.valuation().value, z2.valuation().value);
    if (v < 1) throw std::domain_error("formal_add: argument outside the kernel of reduction");
    const int prec = std::min(z1.precision(), z2.precision());
    std::vector<PadicNfElement> p1{PadicNfElement::one(z1.field_ptr(), z1.prime(), prec + 4 * m)};
    std::vector<PadicNfElement> p2{p1.front()};
    for (int i = 1; i < m; ++i) {
        p1.push_back(p1.back() * z1);
        p2.push_back(p2.back() * z2);
    }
    PadicNfElement acc = PadicNfElement::zero(z1.field_ptr(), z1.prime(), prec + 4 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) {
            const NfElement& c = law.coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (c.is_zero()) continue;
            acc += (p1[static_cast<std::size_t>(i)] * p2[static_cast<std::size_t>(j)]).mul_exact(c, prec / 2);
        }
    return acc.with_precision(m * v);
}

PadicNfElement formal_negate(const FormalGroup& fg, const PadicNfElement& z) {
    const int v = certified_valuation(z, "formal_negate");
    return eval_exact_series(fg.iota(), z, fg.order() * v, z.precision() / 2);
}

PadicNfElement NSeries::evaluate(long n) const {
    PadicNfElement acc = coeffs.front();
    mpz_class pw = 1;
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        pw *= n;
        acc += coeffs[j] * pw;
    }
    return acc.with_precision(tail_valuation);
}

NSeries z_of_multiple(const FormalGroup& fg, const PadicNfElement& zq, int max_degree) {
    const unsigned long p = zq.prime();
    const int vz = certified_valuation(zq, "z_of_multiple");
    if (vz < kernel_radius(p)) throw std::domain_error("z_of_multiple: v_p(zQ) below the exponential's domain");
    if (max_degree >= fg.order()) throw std::invalid_argument("z_of_multiple: n-degree must be below the z-order");
    const PadicNfElement lg = formal_log(fg, zq);
    const int vl = certified_valuation(lg, "z_of_multiple: log zQ");
    NSeries out;
    out.coeffs.push_back(PadicNfElement::zero(zq.field_ptr(), p, zq.precision()));
    PadicNfElement pw = lg;
    for (int m = 1; m <= max_degree; ++m) {
        if (m > 1) pw = pw * lg;
        const NfElement& e = fg.exp()[static_cast<std::size_t>(m)];
        out.coeffs.push_back(pw.mul_exact(e, zq.precision() / 2));
    }
    // Degree j > J terms are b_j/j! (n log zQ)^j with b_j integral: v >= j vL - (j-1)/(p-1).
    const long p1 = static_cast<long>(p) - 1;
    out.tail_valuation = ceil_div((static_cast<long>(max_degree) + 1) * vl * p1 - max_degree, p1);
    return out;
}

PadicNfElement ThetaVector::evaluate(long n) const {
    NSeries s{coeffs, tail_valuation};
    return s.evaluate(n);
}

PadicInt ThetaVector::evaluate_component(int i, long n) const {
    return evaluate(n).coord(static_cast<std::size_t>(i));
}

ThetaKind theta_kind_for(const CurvePoint& base, unsigned long p) {
    if (base.is_infinity()) return ThetaKind::inv_beta_x;
    return exact_valuation(base.x(), p) < 0 ? ThetaKind::inv_beta_x : ThetaKind::beta_x;
}

NfElement theta_exact_value(const WeierstrassCurve& c, ThetaKind kind, const NfElement& beta, const CurvePoint& point) {
    if (point.is_infinity()) {
        if (kind == ThetaKind::inv_beta_x) return c.field().zero();
        throw std::domain_error("theta_exact_value: beta*x undefined at infinity");
    }
    const NfElement bx = beta * point.x();
    return kind == ThetaKind::beta_x ? bx : bx.inverse();
}

ThetaVector theta_series(const FormalGroup& fg, const NfElement& beta, const CurvePoint& base, const NfElement& zq,
                         unsigned long p, const ThetaOptions& opt) {
    const auto& c = fg.curve();
    const NumberField& f = c.field();
    const int n = opt.precision;
    const int jmax = opt.max_degree;
    const auto terms = static_cast<std::size_t>(jmax + 1);
    const int max_loss = n / 2;
    if (jmax + 3 > fg.order()) throw std::invalid_argument("theta_series: z-order too small for the n-degree");

    const PadicNfElement zqp = padic_lift(zq, p, n);
    const NSeries e = z_of_multiple(fg, zqp, jmax);
    const PadicNfElement one = PadicNfElement::one(&f, p, n);

    ThetaVector out;
    out.prime = p;
    out.kind = theta_kind_for(base, p);
    out.tail_valuation = e.tail_valuation;

    std::vector<PadicNfElement> theta = nconst(PadicNfElement::zero(&f, p, n), terms);
    if (out.kind == ThetaKind::beta_x) {
        // x(P + R) with R = (t^-2 u, -t^-3 u): slope t^-1 S, S = (-u - yP t^3) / (u - xP t^2).
        const auto k = terms + 2;
        const Series<NfElement> u = fg.u().truncated(k);
        Series<NfElement> num = -u;
        num.at(3) -= base.y();
        Series<NfElement> den = u;
        den.at(2) -= base.x();
        const Series<NfElement> s = num * den.inverse();
        const Series<NfElement> t = s * s + s.shifted_up(1).scaled(c.a1()) - u;
        if (!t[0].is_zero() || !t[1].is_zero()) {
            throw std::logic_error("theta_series: negative-degree terms survive in beta*x(P + nQ)");
        }
        Series<NfElement> g = t.shifted_down(2);
        g.at(0) -= c.a2() + base.x();
        g = g.scaled(beta);
        std::vector<PadicNfElement> pw = nconst(one, terms);
        for (std::size_t kk = 0; kk < terms; ++kk) {
            if (kk > 0) pw = nmul(pw, e.coeffs);
            if (g[kk].is_zero()) continue;
            for (std::size_t j = 0; j < terms; ++j) theta[j] += pw[j].mul_exact(g[kk], max_loss);
        }
    } else {
        // 1/(beta x) = (w/t^3) t^2 / beta at t = z(P + nQ) = F(z(P), z(nQ)).
        const int m = fg.order();
        std::vector<PadicNfElement> tn = e.coeffs;
        bool shifted = false;
        int vmin_t = e.tail_valuation;
        for (std::size_t j = 1; j < terms; ++j) vmin_t = std::min(vmin_t, e.coeffs[j].valuation().value);
        if (!base.is_infinity()) {
            shifted = true;
            const NfElement zp = z_coord(base);
            const PadicNfElement zpp = padic_lift(zp, p, n);
            const int vzp = certified_valuation(zpp, "theta_series: z(P)");
            if (vzp < 1) throw std::domain_error("theta_series: base point not in the kernel of reduction");
            const auto& law = fg.law();
            std::vector<PadicNfElement> zpow{PadicNfElement::one(&f, p, n + 4 * m)};
            for (int i = 1; i < m; ++i) zpow.push_back(zpow.back() * zpp);
            tn = nconst(PadicNfElement::zero(&f, p, n), terms);
            std::vector<PadicNfElement> epow = nconst(one, terms);
            for (int jj = 0; jj < m; ++jj) {
                if (jj > 0) epow = nmul(epow, e.coeffs);
                PadicNfElement fj = PadicNfElement::zero(&f, p, n + 4 * m);
                for (int i = 0; i + jj < m; ++i) {
                    const NfElement& cf = law.coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(jj));
                    if (cf.is_zero()) continue;
                    fj += zpow[static_cast<std::size_t>(i)].mul_exact(cf, max_loss);
                }
                for (std::size_t j = 0; j < terms; ++j) tn[j] += fj * epow[j];
            }
            vmin_t = std::min(vzp, vmin_t);
            cap_all(tn, m * vmin_t);
        }
        const Series<NfElement> wz = fg.w().shifted_down(3);
        const NfElement binv = beta.inverse();
        std::vector<PadicNfElement> pw = nconst(one, terms);
        const int kmax = shifted ? m : static_cast<int>(terms);
        for (int kk = 0; kk < kmax; ++kk) {
            if (kk > 0) pw = nmul(pw, tn);
            if (kk < 2) continue;
            const NfElement hk = wz[static_cast<std::size_t>(kk - 2)] * binv;
            if (hk.is_zero()) continue;
            for (std::size_t j = 0; j < terms; ++j) theta[j] += pw[j].mul_exact(hk, max_loss);
        }
        if (shifted) cap_all(theta, m * vmin_t);
    }
    out.coeffs = std::move(theta);

    // Proven zeros: the exact constant term, and odd degrees when P = -P.
    const int d = f.degree();
    out.exact_zero.assign(static_cast<std::size_t>(d), std::vector<bool>(terms, false));
    const NfElement v0 = theta_exact_value(c, out.kind, beta, base);
    const PadicNfElement v0p = padic_lift(v0, p, n);
    if (!out.coeffs[0].congruent(v0p)) throw std::logic_error("theta_series: constant term disagrees with exact value");
    for (int i = 0; i < d; ++i) {
        if (v0[static_cast<std::size_t>(i)] == 0) out.exact_zero[static_cast<std::size_t>(i)][0] = true;
    }
    const bool symmetric = base.is_infinity() || scalar_mul(c, 2, base).is_infinity();
    if (symmetric) {
        for (std::size_t j = 1; j < terms; j += 2) {
            if (!out.coeffs[j].is_zero_to_precision()) {
                throw std::logic_error("theta_series: odd coefficient nonzero for a symmetric base point");
            }
            for (int i = 0; i < d; ++i) out.exact_zero[static_cast<std::size_t>(i)][j] = true;
        }
    }
    return out;
}

StrassmanCertificate strassman_bound(const std::vector<PadicInt>& coeffs, const std::vector<bool>& exact_zero,
                                     int tail_valuation) {
    int vstar = tail_valuation;
    bool any = false;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (exact_zero[j]) continue;
        const auto v = coeffs[j].valuation();
        if (!v.lower_bound_only) {
            vstar = std::min(vstar, v.value);
            any = true;
        }
    }
    if (!any) {
        int known = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (!exact_zero[j]) known = std::max(known, coeffs[j].precision);
        }
        throw PrecisionError("strassman_bound: every coefficient vanishes to working precision " +
                                 std::to_string(known),
                             known + 1);
    }
    if (vstar >= tail_valuation) {
        throw PrecisionError("strassman_bound: minimal valuation " + std::to_string(vstar) +
                                 " not below the tail bound " + std::to_string(tail_valuation) +
                                 " (raise the n-degree)",
                             0);
    }
    int bound = -1;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (exact_zero[j]) continue;
        const auto v = coeffs[j].valuation();
        if (v.lower_bound_only) {
            if (v.value <= vstar) {
                throw PrecisionError("strassman_bound: coefficient of degree " + std::to_string(j) +
                                         " known only to valuation >= " + std::to_string(v.value),
                                     vstar + 1 + (vstar + 1 - v.value));
            }
        } else if (v.value == vstar) {
            bound = static_cast<int>(j);
        }
    }
    return {bound, vstar, tail_valuation};
}

namespace {

/// a_k has certified valuation below every later coefficient and the tail.
bool dominant_at(const std::vector<PadicInt>& a, const std::vector<bool>& ez, std::size_t k, int tail) {
    if (ez[k]) return false;
    const auto vk = a[k].valuation();
    if (vk.lower_bound_only || vk.value >= tail) return false;
    for (std::size_t j = k + 1; j < a.size(); ++j) {
        if (ez[j]) continue;
        if (a[j].valuation().value <= vk.value) return false;
    }
    return true;
}

}  // namespace

RootVerdict rationality_roots(const ThetaVector& theta, const std::vector<std::set<long>>& known_roots) {
    RootVerdict out;
    const int d = theta.components();
    std::optional<std::set<long>> common;
    for (int i = 1; i < d; ++i) {
        std::vector<PadicInt> a;
        for (int j = 0; j <= theta.degree(); ++j) a.push_back(theta.component(i, j));
        const auto& ez = theta.exact_zero[static_cast<std::size_t>(i)];
        ComponentRoots cr{i, RootMethod::uncertified, {}, 0, std::nullopt, ""};
        std::size_t k = 0;
        while (k < a.size() && ez[k]) ++k;
        if (k == 0 && dominant_at(a, ez, 0, theta.tail_valuation)) {
            cr.method = RootMethod::dominant_constant;
            cr.diagnostic = "v(theta(0)) = " + std::to_string(a[0].valuation().value) + " is dominant";
        } else if (k > 0 && k < a.size() && dominant_at(a, ez, k, theta.tail_valuation)) {
            cr.method = RootMethod::factored_dominant;
            cr.factored_power = static_cast<int>(k);
            cr.roots = {0};
            cr.diagnostic = "theta = n^" + std::to_string(k) + " * (dominant term of valuation " +
                            std::to_string(a[k].valuation().value) + " + ...)";
        } else {
            const std::set<long>& known = known_roots.at(static_cast<std::size_t>(i));
            try {
                const auto cert = strassman_bound(a, ez, theta.tail_valuation);
                cr.strassman = cert;
                if (cert.bound == static_cast<int>(known.size())) {
                    cr.method = RootMethod::strassman;
                    cr.roots = known;
                    cr.diagnostic = "Strassman bound " + std::to_string(cert.bound) + " equals known root count";
                } else {
                    cr.diagnostic = "Strassman bound " + std::to_string(cert.bound) + " exceeds " +
                                    std::to_string(known.size()) + " known roots";
                }
            } catch (const PrecisionError& e) {
                cr.diagnostic = e.what();
                cr.precision_demand = e.required_precision();
            }
        }
        if (cr.method != RootMethod::uncertified) {
            if (!common) {
                common = cr.roots;
            } else {
                std::set<long> inter;
                std::set_intersection(common->begin(), common->end(), cr.roots.begin(), cr.roots.end(),
                                      std::inserter(inter, inter.begin()));
                common = std::move(inter);
            }
        }
        out.components.push_back(std::move(cr));
    }
    if (!common) return out;
    out.complete = true;
    for (long n : *common) {
        bool all = true;
        for (int i = 1; i < d; ++i) all = all && known_roots.at(static_cast<std::size_t>(i)).count(n) > 0;
        if (all) out.roots.insert(n);
    }
    return out;
}

std::string root_method_name(RootMethod m) {
    switch (m) {
        case RootMethod::dominant_constant: return "dominant_constant";
        case RootMethod::factored_dominant: return "factored_dominant";
        case RootMethod::strassman: return "strassman";
        case RootMethod::uncertified: return "uncertified";
    }
    return "?";
}

namespace {

nlohmann::json term_json(const PadicNfElement& c, int degree) {
    nlohmann::json coords = nlohmann::json::array();
    nlohmann::json vals = nlohmann::json::array();
    for (std::size_t i = 0; i < c.coords().size(); ++i) {
        coords.push_back(c.coord(i).centered().get_str());
        vals.push_back(c.coord(i).valuation().str());
    }
    return {{"exponent", degree}, {"coords", coords}, {"coord_valuations", vals},
            {"valuation", c.valuation().str()}, {"precision", c.precision()}};
}

}  // namespace

nlohmann::json series_dump(const ThetaVector& theta) {
    nlohmann::json terms = nlohmann::json::array();
    for (int j = 0; j <= theta.degree(); ++j) terms.push_back(term_json(theta.coeffs[static_cast<std::size_t>(j)], j));
    return {{"kind", theta.kind == ThetaKind::beta_x ? "beta_x" : "inv_beta_x"},
            {"prime", theta.prime},
            {"tail_valuation", theta.tail_valuation},
            {"terms", terms}};
}

nlohmann::json series_dump(const NSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (int j = 0; j <= s.degree(); ++j) terms.push_back(term_json(s.coeffs[static_cast<std::size_t>(j)], j));
    return {{"tail_valuation", s.tail_valuation}, {"terms", terms}};
}

}  // namespace lucasq
