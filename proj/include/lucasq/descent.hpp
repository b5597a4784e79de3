#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "lucasq/lucas.hpp"
#include "lucasq/numfield.hpp"

namespace lucasq {

/// Binary forms in (P, Q) appearing in the factorizations of U_12 and U_9.
enum class Form { p, p2_3q, p2_q, p2_2q, quartic, sextic };

std::string form_label(Form f);
mpz_class evaluate_form(Form f, const mpz_class& p, const mpz_class& q);
/// Same form reduced modulo m (0 <= p, q < m).
long evaluate_form_mod(Form f, long p, long q, long m);

/// form(P, Q) = multiplier * (nonzero square).
struct Condition {
    Form form;
    long multiplier;
};

struct ConstraintSystem {
    std::vector<Condition> conditions;

    std::string str() const;
    /// Exact check at an integer pair.
    bool satisfied_by(const mpz_class& p, const mpz_class& q) const;
};

enum class VerdictStatus { real_unsolvable, congruence_unsolvable, survives };

struct SolvabilityVerdict {
    VerdictStatus status;
    std::optional<long> modulus;                          // congruence_unsolvable
    std::optional<std::pair<long, long>> witness;         // survives: integer solution, if found
    std::string note;

    std::string str() const;
};

/// The five factors P, P^2-3Q, P^2-2Q, P^2-Q, P^4-4P^2Q+Q^2 of U_12.
std::array<mpz_class, 5> factor_u12(const LucasParams& params);

/// gcd(P(P^2-3Q), P^4-4P^2Q+Q^2); divides 2 for coprime (P, Q).
mpz_class pairwise_gcd_bound(const LucasParams& params);

/// Both sides of the split of U_12 = square: 24 systems in (P, P^2-3Q, P^2-Q) followed by
/// 8 systems in (P^2-2Q, P^4-4P^2Q+Q^2), unfiltered.
struct U12Systems {
    std::vector<ConstraintSystem> left;
    std::vector<ConstraintSystem> right;
};
U12Systems enumerate_u12_systems();

const std::vector<long>& default_moduli();

/// Real sign check, then exhaustive residue scans with gcd(P, Q) = 1 enforced per prime.
/// Residue rows are scanned in parallel; the verdict is independent of scheduling.
SolvabilityVerdict local_solvability(const ConstraintSystem& system, const std::vector<long>& moduli = default_moduli());

/// Single-threaded reference implementation.
SolvabilityVerdict local_solvability_serial(const ConstraintSystem& system,
                                            const std::vector<long>& moduli = default_moduli());

/// Full residue scan mod m (independent recheck of a congruence verdict).
bool congruence_solvable(const ConstraintSystem& system, long m);

/// Columns (P, P^2-3Q, P^2-Q, P^2-2Q, P^4-4P^2Q+Q^2), rows in table order.
std::vector<ConstraintSystem> surviving_u12_table();

struct SurvivalEntry {
    std::string side;  // left, right or combined
    ConstraintSystem system;
    SolvabilityVerdict verdict;
};

/// Every enumerated system with its verdict, for reporting.
std::vector<SurvivalEntry> survival_report();
nlohmann::json survival_report_json();

/// 3u^2-1 = 2□, 4u^2-1 = 3□, 2u^4+2u^2-1 = 3□.
bool genus9_check(const mpq_class& u);

/// v = m * (nonzero rational square).
bool is_multiple_of_square(const mpq_class& v, long m);

/// U_9 with Q = P^2 - delta R^2: the sextic (3/delta)P^6 - 9P^4R^2 + 6 delta P^2R^4 + delta^2 R^6
/// equals Norm_{L/Q}(s P^2 + theta R^2).
struct NormSplit {
    long delta;
    std::array<mpz_class, 4> sextic;  // coefficients of P^6, P^4R^2, P^2R^4, R^6
    int p2_sign;                      // s
    NfElement theta;                  // coefficient of R^2 inside the norm
    std::string substitution;

    mpz_class evaluate(const mpz_class& p, const mpz_class& r) const;
};

/// delta must be 3 or -3; theta lives in the shipped field L.
NormSplit u9_norm_split(long delta);

/// delta * y^2 = f(x) with rational coefficients (low to high).
struct PlaneCurveModel {
    std::string name;
    std::vector<mpq_class> poly;
    long multiplier;
};

struct PointHit {
    mpq_class x;
    mpq_class value;      // f(x)
    bool zero_value;      // f(x) == 0
    bool torsion;         // point of finite order on the Weierstrass model
    int order;            // order when torsion (1..12), else 0
};

/// (1 - 2x)(1 - 4x + x^2) = delta □.
PlaneCurveModel u12_delta_curve(long delta);

/// Rational x = a/b with |a|, |b| <= bound where f(x) is zero or delta times a nonzero square.
/// Cubic models are classified torsion/non-torsion via the group law (Mazur: order <= 12).
std::vector<PointHit> small_point_search(const PlaneCurveModel& model, long bound);

}  // namespace lucasq
