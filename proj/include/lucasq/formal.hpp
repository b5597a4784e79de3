#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lucasq/ellcurve.hpp"
#include "lucasq/padic.hpp"
#include "lucasq/series.hpp"

namespace lucasq {

/// Exact formal group of a Weierstrass curve, truncated at z-order M.
class FormalGroup {
public:
    FormalGroup(const WeierstrassCurve& curve, int order);

    const WeierstrassCurve& curve() const { return *curve_; }
    int order() const { return order_; }

    /// w(z) = z^3 + ..., order M + 3.
    const Series<NfElement>& w() const { return w_; }
    /// u = (w/z^3)^{-1}; x(z) = z^-2 u, y(z) = -z^-3 u.
    const Series<NfElement>& u() const { return u_; }
    LaurentSeries<NfElement> x() const { return {-2, u_}; }
    LaurentSeries<NfElement> y() const { return {-3, -u_}; }
    /// Invariant differential omega(z)/dz.
    const Series<NfElement>& omega() const { return omega_; }
    const Series<NfElement>& log() const { return log_; }
    const Series<NfElement>& exp() const { return exp_; }
    const Series<NfElement>& iota() const { return iota_; }
    /// F(z1, z2); built on first use.
    const BivariateSeries<NfElement>& law() const;

private:
    const WeierstrassCurve* curve_;
    int order_;
    Series<NfElement> w_, u_, omega_, log_, exp_, iota_;
    mutable std::unique_ptr<BivariateSeries<NfElement>> law_;
};

/// w(z) by fixed-point iteration of w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3.
Series<NfElement> w_series(const WeierstrassCurve& c, int order);

/// Residual of the curve equation at (x(z), y(z)) as a Laurent series (should vanish).
LaurentSeries<NfElement> curve_identity_residual(const FormalGroup& fg);

/// sum_k s_k x^k with each exact coefficient lifted (denominators with p allowed up to max_loss
/// digits); the result is capped at tail_valuation.
PadicNfElement eval_exact_series(const Series<NfElement>& s, const PadicNfElement& x, int tail_valuation,
                                 int max_loss);

/// Formal-group operations at p-adic arguments of valuation >= r (the exponential's domain for exp).
PadicNfElement formal_log(const FormalGroup& fg, const PadicNfElement& z);
PadicNfElement formal_exp(const FormalGroup& fg, const PadicNfElement& t);
PadicNfElement formal_add(const FormalGroup& fg, const PadicNfElement& z1, const PadicNfElement& z2);
PadicNfElement formal_negate(const FormalGroup& fg, const PadicNfElement& z);

/// Power series in n with p-adic coefficients for degrees 0..J; every omitted degree contributes
/// terms of valuation >= tail_valuation at integral n.
struct NSeries {
    std::vector<PadicNfElement> coeffs;
    int tail_valuation = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    PadicNfElement evaluate(long n) const;
};

/// z(nQ) = exp(n log zQ) as a series in n; requires v_p(zQ) >= r.
NSeries z_of_multiple(const FormalGroup& fg, const PadicNfElement& zq, int max_degree);

enum class ThetaKind {
    beta_x,      // beta * x(P + nQ), base point off the kernel of reduction
    inv_beta_x,  // 1 / (beta * x(P + nQ)), base point in the kernel (or infinity)
};

/// Components theta_i(n) of the alpha-expansion of the theta quantity.
struct ThetaVector {
    ThetaKind kind = ThetaKind::beta_x;
    unsigned long prime = 0;
    std::vector<PadicNfElement> coeffs;           // combined coefficient of n^j
    std::vector<std::vector<bool>> exact_zero;    // [component][degree]: proven zero
    int tail_valuation = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    int components() const { return coeffs.empty() ? 0 : coeffs.front().field().degree(); }
    PadicInt component(int i, int j) const { return coeffs[static_cast<std::size_t>(j)].coord(static_cast<std::size_t>(i)); }
    PadicNfElement evaluate(long n) const;
    /// Recombined theta_i(n) alpha^i at an integer, as a p-adic element.
    PadicInt evaluate_component(int i, long n) const;
};

struct ThetaOptions {
    int precision;   // N
    int max_degree;  // J
};

/// Theta expansion for base point P and kernel point with parameter zQ (exact).
/// Base points reducing to infinity use the inv_beta_x form via F(z(P), z(nQ)).
ThetaVector theta_series(const FormalGroup& fg, const NfElement& beta, const CurvePoint& base, const NfElement& zq,
                         unsigned long p, const ThetaOptions& opt);

/// Exact theta quantity at the point P + nQ (zero when the point is infinity in inv_beta_x form).
NfElement theta_exact_value(const WeierstrassCurve& c, ThetaKind kind, const NfElement& beta, const CurvePoint& point);

ThetaKind theta_kind_for(const CurvePoint& base, unsigned long p);

struct StrassmanCertificate {
    int bound;          // largest index attaining the minimal valuation
    int min_valuation;  // v*
    int tail_valuation;
};

/// Strassman bound for sum a_j n^j with coefficients known mod p^precision.
/// Proven-zero coefficients are skipped. Throws PrecisionError when v* is not certifiable.
StrassmanCertificate strassman_bound(const std::vector<PadicInt>& coeffs, const std::vector<bool>& exact_zero,
                                     int tail_valuation);

enum class RootMethod { dominant_constant, factored_dominant, strassman, uncertified };

struct ComponentRoots {
    int component;
    RootMethod method;
    std::set<long> roots;        // certified superset of the roots in Z_p (only when certified)
    int factored_power = 0;      // k in n^k for factored_dominant
    std::optional<StrassmanCertificate> strassman;
    std::string diagnostic;
    int precision_demand = 0;    // p-adic digits that would lift an uncertified bound, 0 if unknown
};

struct RootVerdict {
    bool complete = false;
    std::set<long> roots;
    std::vector<ComponentRoots> components;
};

/// Certify the common zeros of theta_i, i >= 1. known_roots[i] lists integers n with theta_i(n) = 0
/// exactly (entry 0 unused).
RootVerdict rationality_roots(const ThetaVector& theta, const std::vector<std::set<long>>& known_roots);

std::string root_method_name(RootMethod m);

/// Debug dump: per-term exponent, coordinates, valuation and the tail bound.
nlohmann::json series_dump(const ThetaVector& theta);
nlohmann::json series_dump(const NSeries& s);

}  // namespace lucasq
