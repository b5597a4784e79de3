#include "lucasq/descent.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lucasq/arith.hpp"
#include "lucasq/config.hpp"
#include "lucasq/ellcurve.hpp"

namespace lucasq {

namespace {

long mmod(long a, long m) {
    const long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<long> prime_factors(long m) {
    std::vector<long> ps;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

/// Residues of mult * k^2 modulo m, as a membership table.
std::vector<char> square_class_table(long mult, long m) {
    std::vector<char> t(static_cast<std::size_t>(m), 0);
    for (long k = 0; k < m; ++k) t[static_cast<std::size_t>(mmod(mmod(mult, m) * (k * k % m), m))] = 1;
    return t;
}

bool residue_row_solvable(const ConstraintSystem& s, const std::vector<std::vector<char>>& tables,
                          const std::vector<long>& primes, long m, long p) {
    for (long q = 0; q < m; ++q) {
        bool shared = false;
        for (long pr : primes) shared = shared || (p % pr == 0 && q % pr == 0);
        if (shared) continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < s.conditions.size(); ++i) {
            const long v = evaluate_form_mod(s.conditions[i].form, p, q, m);
            ok = tables[i][static_cast<std::size_t>(v)] != 0;
        }
        if (ok) return true;
    }
    return false;
}

bool congruence_solvable_impl(const ConstraintSystem& s, long m, bool parallel) {
    std::vector<std::vector<char>> tables;
    for (const auto& c : s.conditions) tables.push_back(square_class_table(c.multiplier, m));
    const auto primes = prime_factors(m);
    if (!parallel) {
        for (long p = 0; p < m; ++p) {
            if (residue_row_solvable(s, tables, primes, m, p)) return true;
        }
        return false;
    }
    int found = 0;
#pragma omp parallel for schedule(static) reduction(| : found)
    for (long p = 0; p < m; ++p) {
        if (residue_row_solvable(s, tables, primes, m, p)) found |= 1;
    }
    return found != 0;
}

/// Sign patterns are constant on the open x = Q/P^2 intervals cut out by the forms' real roots
/// (2 - sqrt3, 1/3, 1/2, 1, 2 + sqrt3, and for U_9 further roots); a grid of step 1/40 meets each.
bool real_solvable(const ConstraintSystem& s) {
    for (long sign : {1L, -1L}) {
        for (long k = -400; k <= 800; ++k) {
            const mpz_class p = 40 * sign;
            const mpz_class q = 40 * k;  // x = k/40
            bool ok = true;
            for (const auto& c : s.conditions) {
                const int sv = sgn(evaluate_form(c.form, p, q));
                ok = ok && sv != 0 && sv == (c.multiplier > 0 ? 1 : -1);
            }
            if (ok) return true;
        }
    }
    return false;
}

std::optional<std::pair<long, long>> small_witness(const ConstraintSystem& s, long bound) {
    for (long h = 1; h <= bound; ++h) {
        for (long p = -h; p <= h; ++p) {
            for (long q = -h; q <= h; ++q) {
                if (std::max(std::labs(p), std::labs(q)) != h || p == 0 || q == 0) continue;
                if (std::gcd(p, q) != 1) continue;
                if (s.satisfied_by(p, q)) return std::make_pair(p, q);
            }
        }
    }
    return std::nullopt;
}

SolvabilityVerdict verdict_impl(const ConstraintSystem& s, const std::vector<long>& moduli, bool parallel) {
    if (moduli.empty()) throw std::invalid_argument("local_solvability: empty modulus list");
    if (!real_solvable(s)) return {VerdictStatus::real_unsolvable, std::nullopt, std::nullopt, "sign pattern impossible over R"};
    for (long m : moduli) {
        if (!congruence_solvable_impl(s, m, parallel)) {
            return {VerdictStatus::congruence_unsolvable, m, std::nullopt,
                    "no residue pair mod " + std::to_string(m) + " with gcd(P,Q) = 1"};
        }
    }
    SolvabilityVerdict v{VerdictStatus::survives, std::nullopt, small_witness(s, 40), ""};
    v.note = v.witness ? "integer solution found" : "locally solvable at all tested moduli";
    return v;
}

int table_rank(const ConstraintSystem& s) {
    // Paper order: by the P^2-Q multiplier (1, -1, 2, -2), then |P multiplier|.
    long pq = 0, pm = 0;
    for (const auto& c : s.conditions) {
        if (c.form == Form::p2_q) pq = c.multiplier;
        if (c.form == Form::p) pm = c.multiplier;
    }
    const std::vector<long> order{1, -1, 2, -2};
    const auto it = std::find(order.begin(), order.end(), pq);
    return static_cast<int>(it - order.begin()) * 100 + static_cast<int>(std::labs(pm));
}

nlohmann::json system_json(const ConstraintSystem& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : s.conditions) arr.push_back({{"form", form_label(c.form)}, {"multiplier", c.multiplier}});
    return arr;
}

}  // namespace

std::string form_label(Form f) {
    switch (f) {
        case Form::p: return "P";
        case Form::p2_3q: return "P^2-3Q";
        case Form::p2_q: return "P^2-Q";
        case Form::p2_2q: return "P^2-2Q";
        case Form::quartic: return "P^4-4P^2Q+Q^2";
        case Form::sextic: return "P^6-6P^4Q+9P^2Q^2-Q^3";
    }
    return "?";
}

mpz_class evaluate_form(Form f, const mpz_class& p, const mpz_class& q) {
    const mpz_class p2 = p * p;
    switch (f) {
        case Form::p: return p;
        case Form::p2_3q: return p2 - 3 * q;
        case Form::p2_q: return p2 - q;
        case Form::p2_2q: return p2 - 2 * q;
        case Form::quartic: return p2 * p2 - 4 * p2 * q + q * q;
        case Form::sextic: return p2 * p2 * p2 - 6 * p2 * p2 * q + 9 * p2 * q * q - q * q * q;
    }
    return 0;
}

long evaluate_form_mod(Form f, long p, long q, long m) {
    const long p2 = p * p % m;
    switch (f) {
        case Form::p: return mmod(p, m);
        case Form::p2_3q: return mmod(p2 - 3 * q, m);
        case Form::p2_q: return mmod(p2 - q, m);
        case Form::p2_2q: return mmod(p2 - 2 * q, m);
        case Form::quartic: return mmod(p2 * p2 % m - 4 * p2 % m * q % m + q * q % m, m);
        case Form::sextic: {
            const long p4 = p2 * p2 % m;
            const long q2 = q * q % m;
            return mmod(p4 * p2 % m - 6 * p4 % m * q % m + 9 * p2 % m * q2 % m - q2 * q % m, m);
        }
    }
    return 0;
}

std::string ConstraintSystem::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (i) s += ", ";
        const long m = conditions[i].multiplier;
        s += form_label(conditions[i].form) + " = " + (m == 1 ? "" : m == -1 ? "-" : std::to_string(m)) + "□";
    }
    return s + "}";
}

bool ConstraintSystem::satisfied_by(const mpz_class& p, const mpz_class& q) const {
    for (const auto& c : conditions) {
        if (!is_multiple_of_square(mpq_class(evaluate_form(c.form, p, q)), c.multiplier)) return false;
    }
    return true;
}

std::string SolvabilityVerdict::str() const {
    switch (status) {
        case VerdictStatus::real_unsolvable: return "real_unsolvable";
        case VerdictStatus::congruence_unsolvable: return "congruence_unsolvable(" + std::to_string(*modulus) + ")";
        case VerdictStatus::survives: return "survives";
    }
    return "?";
}

std::array<mpz_class, 5> factor_u12(const LucasParams& params) {
    const auto& p = params.p();
    const auto& q = params.q();
    return {evaluate_form(Form::p, p, q), evaluate_form(Form::p2_3q, p, q), evaluate_form(Form::p2_2q, p, q),
            evaluate_form(Form::p2_q, p, q), evaluate_form(Form::quartic, p, q)};
}

mpz_class pairwise_gcd_bound(const LucasParams& params) {
    const auto f = factor_u12(params);
    mpz_class g;
    const mpz_class a = f[0] * f[1];
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f[4].get_mpz_t());
    return g;
}

U12Systems enumerate_u12_systems() {
    U12Systems out;
    for (long d : {1L, -1L, 3L, -3L}) {
        out.left.push_back({{{Form::p, d}, {Form::p2_3q, 2 * d}, {Form::p2_q, 1}}});
        out.left.push_back({{{Form::p, d}, {Form::p2_3q, -2 * d}, {Form::p2_q, -1}}});
        out.left.push_back({{{Form::p, 2 * d}, {Form::p2_3q, d}, {Form::p2_q, 1}}});
        out.left.push_back({{{Form::p, 2 * d}, {Form::p2_3q, -d}, {Form::p2_q, -1}}});
    }
    for (long d : {1L, -1L, 3L, -3L}) {
        out.left.push_back({{{Form::p, d}, {Form::p2_3q, d}, {Form::p2_q, 2}}});
        out.left.push_back({{{Form::p, d}, {Form::p2_3q, -d}, {Form::p2_q, -2}}});
    }
    for (long e : {1L, -1L, 3L, -3L}) {
        out.right.push_back({{{Form::p2_2q, e}, {Form::quartic, 2 * e}}});
        out.right.push_back({{{Form::p2_2q, 2 * e}, {Form::quartic, e}}});
    }
    return out;
}

const std::vector<long>& default_moduli() {
    static const std::vector<long> m{16, 9, 5, 7, 11, 13};
    return m;
}

SolvabilityVerdict local_solvability(const ConstraintSystem& system, const std::vector<long>& moduli) {
    return verdict_impl(system, moduli, true);
}

SolvabilityVerdict local_solvability_serial(const ConstraintSystem& system, const std::vector<long>& moduli) {
    return verdict_impl(system, moduli, false);
}

bool congruence_solvable(const ConstraintSystem& system, long m) { return congruence_solvable_impl(system, m, false); }

std::vector<SurvivalEntry> survival_report() {
    const auto sys = enumerate_u12_systems();
    std::vector<SurvivalEntry> out;
    std::vector<ConstraintSystem> left, right;
    for (const auto& s : sys.left) {
        out.push_back({"left", s, local_solvability(s)});
        if (out.back().verdict.status == VerdictStatus::survives) left.push_back(s);
    }
    for (const auto& s : sys.right) {
        out.push_back({"right", s, local_solvability(s)});
        if (out.back().verdict.status == VerdictStatus::survives) right.push_back(s);
    }
    for (const auto& l : left) {
        for (const auto& r : right) {
            ConstraintSystem c = l;
            c.conditions.insert(c.conditions.end(), r.conditions.begin(), r.conditions.end());
            out.push_back({"combined", c, local_solvability(c)});
        }
    }
    return out;
}

std::vector<ConstraintSystem> surviving_u12_table() {
    std::vector<ConstraintSystem> rows;
    for (const auto& e : survival_report()) {
        if (e.side == "combined" && e.verdict.status == VerdictStatus::survives) rows.push_back(e.system);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ConstraintSystem& a, const ConstraintSystem& b) { return table_rank(a) < table_rank(b); });
    return rows;
}

nlohmann::json survival_report_json() {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : survival_report()) {
        nlohmann::json j{{"side", e.side}, {"system", system_json(e.system)}, {"verdict", e.verdict.str()},
                         {"note", e.verdict.note}};
        if (e.verdict.modulus) j["modulus"] = *e.verdict.modulus;
        if (e.verdict.witness) j["witness"] = {e.verdict.witness->first, e.verdict.witness->second};
        entries.push_back(j);
    }
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : surviving_u12_table()) table.push_back(system_json(row));
    return {{"moduli", default_moduli()}, {"systems", entries}, {"table", table}};
}

bool is_multiple_of_square(const mpq_class& v, long m) {
    if (m == 0 || v == 0) return false;
    const mpq_class w = v / m;
    return sgn(w) > 0 && exact_sqrt(w).has_value();
}

bool genus9_check(const mpq_class& u) {
    const mpq_class u2 = u * u;
    return is_multiple_of_square(3 * u2 - 1, 2) && is_multiple_of_square(4 * u2 - 1, 3) &&
           is_multiple_of_square(2 * u2 * u2 + 2 * u2 - 1, 3);
}

mpz_class NormSplit::evaluate(const mpz_class& p, const mpz_class& r) const {
    const mpz_class p2 = p * p;
    const mpz_class r2 = r * r;
    return sextic[0] * p2 * p2 * p2 + sextic[1] * p2 * p2 * r2 + sextic[2] * p2 * r2 * r2 + sextic[3] * r2 * r2 * r2;
}

NormSplit u9_norm_split(long delta) {
    if (delta != 3 && delta != -3) throw std::invalid_argument("u9_norm_split: delta must be 3 or -3");
    const NumberField& l = Registry::builtin().field("L");
    NormSplit s{delta,
                {mpz_class(3 / delta), mpz_class(-9), mpz_class(6 * delta), mpz_class(delta * delta)},
                delta == 3 ? 1 : -1,
                l.from_ints({-5, 1, 1}),
                "Q = P^2 - (" + std::to_string(delta) + ") R^2"};
    return s;
}

PlaneCurveModel u12_delta_curve(long delta) {
    // (1 - 2x)(1 - 4x + x^2) = 1 - 6x + 9x^2 - 2x^3
    return {"(1-2x)(1-4x+x^2) = " + std::to_string(delta) + "□", {1, -6, 9, -2}, delta};
}

std::vector<PointHit> small_point_search(const PlaneCurveModel& model, long bound) {
    const std::size_t deg = model.poly.size() - 1;
    if (deg != 3 && deg != 4) throw std::invalid_argument("small_point_search: cubic or quartic model expected");
    auto f = [&](const mpq_class& x) {
        mpq_class acc = 0;
        for (std::size_t i = model.poly.size(); i-- > 0;) acc = acc * x + model.poly[i];
        return acc;
    };
    std::vector<std::vector<PointHit>> rows(static_cast<std::size_t>(2 * bound + 1));
#pragma omp parallel for schedule(dynamic, 8)
    for (long a = -bound; a <= bound; ++a) {
        auto& row = rows[static_cast<std::size_t>(a + bound)];
        for (long b = 1; b <= bound; ++b) {
            if (std::gcd(a, b) != 1) continue;
            mpq_class x(a, b);
            x.canonicalize();
            const mpq_class v = f(x);
            if (v == 0) {
                row.push_back({x, v, true, true, 2});
            } else if (is_multiple_of_square(v, model.multiplier)) {
                row.push_back({x, v, false, false, 0});
            }
        }
    }
    std::vector<PointHit> hits;
    for (auto& r : rows) hits.insert(hits.end(), r.begin(), r.end());
    std::sort(hits.begin(), hits.end(), [](const PointHit& a, const PointHit& b) { return a.x < b.x; });

    if (deg == 3) {
        // m y^2 = c3 x^3 + c2 x^2 + c1 x + c0  ->  Y^2 = X^3 + c2 m X^2 + c1 c3 m^2 X + c0 c3^2 m^3
        // with X = c3 m x, Y = c3 m^2 y.
        const NumberField& q = Registry::builtin().field("Q");
        const mpq_class m = model.multiplier;
        const mpq_class c0 = model.poly[0], c1 = model.poly[1], c2 = model.poly[2], c3 = model.poly[3];
        const WeierstrassCurve w("model", q.zero(), q.scalar(c2 * m), q.zero(), q.scalar(c1 * c3 * m * m),
                                 q.scalar(c0 * c3 * c3 * m * m * m));
        for (auto& h : hits) {
            if (h.zero_value) continue;
            const mpq_class y = *exact_sqrt(mpq_class(h.value / m));
            const CurvePoint pt = w.point(q.scalar(c3 * m * h.x), q.scalar(c3 * m * m * y));
            CurvePoint acc = pt;
            for (int n = 1; n <= 12; ++n) {
                if (acc.is_infinity()) {
                    h.torsion = true;
                    h.order = n;
                    break;
                }
                acc = point_add(w, acc, pt);
            }
        }
    }
    return hits;
}

}  // namespace lucasq
