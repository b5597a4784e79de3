#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "lucasq/config.hpp"
#include "lucasq/formal.hpp"
#include "lucasq/lucas.hpp"

namespace lucasq {

/// One curve case prepared for the coset analysis: formal group, kernel multiple Q = mP and z(Q).
class ChabautyCase {
public:
    /// Throws std::invalid_argument when beta is not a p-adic unit or the overrides are not positive.
    explicit ChabautyCase(const CurveCase& data, std::optional<PrecisionDefaults> precision = std::nullopt);

    const CurveCase& data() const { return *data_; }
    const WeierstrassCurve& curve() const { return *data_->curve; }
    const FormalGroup& formal_group() const { return fg_; }
    const KernelMultiple& kernel() const { return kernel_; }
    const NfElement& zq() const { return zq_; }
    const PrecisionDefaults& precision() const { return precision_; }

private:
    const CurveCase* data_;
    PrecisionDefaults precision_;
    FormalGroup fg_;
    KernelMultiple kernel_;
    NfElement zq_;
};

/// Base point P = rP1 + T of the coset P + nQ.
struct Coset {
    long r;
    std::string torsion_label;
    CurvePoint base;

    std::string label(const std::string& generator) const;
};

/// Every rP1 + T for the configured r (a complete residue system mod m) and torsion points.
std::vector<Coset> enumerate_cosets(const ChabautyCase& c);

enum class CosetOutcome { rejected_theta_const, rejected_qnr, roots, uncertified };

std::string outcome_name(CosetOutcome o);

/// A certified root n with the exact point P + nQ.
struct RootPoint {
    long n;
    CurvePoint point;
    std::optional<NfElement> beta_x;          // absent at infinity
    std::optional<mpq_class> rational_value;  // beta*x when rational
    std::optional<mpq_class> square_root;     // u >= 0 with beta*x = u^2
};

struct CosetReport {
    Coset coset;
    ThetaKind kind = ThetaKind::beta_x;
    CosetOutcome outcome = CosetOutcome::uncertified;
    int rejecting_component = 0;              // rejected_theta_const
    int rejecting_valuation = 0;
    std::optional<long> nonresidue;           // rejected_qnr: theta_0(0) mod p
    std::vector<std::set<long>> known_roots;  // per component, exact |n| <= 3 scan
    std::optional<RootVerdict> verdict;
    std::vector<RootPoint> points;
    std::optional<ThetaVector> theta;
    std::string diagnostic;
    std::optional<int> precision_demand;
};

/// Pipeline for one coset: theta series, constant-term dominance, quadratic-residue test (square
/// mode, odd p), root certification, exact points at the roots.
CosetReport analyze_coset(const ChabautyCase& c, const Coset& coset);

/// theta(n) against the exact theta quantity at P + nQ lifted p-adically.
bool theta_cross_check(const ChabautyCase& c, const Coset& coset, const ThetaVector& theta, long n,
                       std::string* detail = nullptr);

/// (P, Q) candidates recovered from one surviving beta*x value.
struct BackSubstitution {
    mpq_class value;                 // beta*x
    std::optional<mpq_class> u;      // square root of value
    bool genus9 = false;             // u12 only
    std::vector<LucasParams> pairs;  // each verified by lucas_u
    std::string reason;
};

std::vector<BackSubstitution> back_substitute(const std::string& case_label, const mpq_class& value);

struct CaseReport {
    std::string case_label;
    std::string curve_label;
    unsigned long prime = 0;
    unsigned long kernel_m = 0;
    int kernel_z_valuation = 0;
    PrecisionDefaults precision{};
    std::vector<CosetReport> cosets;
    bool complete = false;
    std::vector<mpq_class> surviving_values;      // sorted distinct beta*x
    std::vector<BackSubstitution> substitutions;
    std::vector<LucasParams> solutions;           // sorted
};

/// Cosets in parallel, merged in (r, T) order.
CaseReport run_case(const ChabautyCase& c);
CaseReport run_case_serial(const ChabautyCase& c);

nlohmann::json case_report_json(const CaseReport& r);

}  // namespace lucasq
