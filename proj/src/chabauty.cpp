#include "lucasq/chabauty.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "lucasq/arith.hpp"
#include "lucasq/descent.hpp"

namespace lucasq {

namespace {

constexpr long kKnownRootRange = 3;

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

bool dominant_constant(const ThetaVector& th, int i, int* valuation) {
    const auto c0 = th.component(i, 0).valuation();
    if (c0.lower_bound_only) return false;
    if (c0.value >= th.tail_valuation) return false;
    for (int j = 1; j <= th.degree(); ++j) {
        if (th.component(i, j).valuation().value <= c0.value) return false;
    }
    *valuation = c0.value;
    return true;
}

/// theta_0(n) = theta_0(0) mod p for every integral n, with theta_0(0) a unit.
std::optional<long> constant_residue(const ThetaVector& th) {
    const PadicInt c0 = th.component(0, 0);
    const auto v = c0.valuation();
    if (v.lower_bound_only || v.value != 0 || th.tail_valuation < 1) return std::nullopt;
    for (int j = 1; j <= th.degree(); ++j) {
        if (th.component(0, j).valuation().value < 1) return std::nullopt;
    }
    return mod_floor(c0.residue, mpz_class(th.prime)).get_si();
}

CurvePoint point_at(const ChabautyCase& c, const Coset& coset, long n) {
    return point_add(c.curve(), coset.base, scalar_mul(c.curve(), n, c.kernel().q));
}

nlohmann::json leading_terms_json(const ThetaVector& th) {
    nlohmann::json comps = nlohmann::json::array();
    for (int i = 0; i < th.components(); ++i) {
        nlohmann::json terms = nlohmann::json::array();
        for (int j = 0; j <= th.degree(); ++j) {
            const PadicInt a = th.component(i, j);
            const auto v = a.valuation();
            nlohmann::json t{{"degree", j}, {"valuation", v.value}, {"exact_zero", th.exact_zero[i][j]}};
            if (v.lower_bound_only) {
                t["lower_bound"] = true;
            } else {
                t["unit_mod_p"] = mod_floor(a.unit_part(), mpz_class(th.prime)).get_si();
            }
            terms.push_back(t);
        }
        comps.push_back({{"component", i}, {"terms", terms}});
    }
    return {{"components", comps}, {"tail_valuation", th.tail_valuation}};
}

}  // namespace

ChabautyCase::ChabautyCase(const CurveCase& data, std::optional<PrecisionDefaults> precision)
    : data_(&data),
      precision_(precision.value_or(data.precision)),
      fg_(*data.curve, precision_.m),
      kernel_(kernel_multiple(*data.curve, data.generator.point, data.prime)),
      zq_(z_coord(kernel_.q)) {
    if (precision_.n < 1 || precision_.m < 1 || precision_.j < 1) {
        throw std::invalid_argument("ChabautyCase: precision parameters must be positive");
    }
    if (!padic_lift(data.beta, data.prime, 1).is_unit()) {
        throw std::invalid_argument("ChabautyCase: beta is not a p-adic unit");
    }
    fg_.law();  // built once, shared read-only by the coset workers
}

std::string Coset::label(const std::string& generator) const {
    std::string s;
    if (r != 0) s = (r == 1 ? "" : r == -1 ? "-" : std::to_string(r)) + generator;
    if (torsion_label != "O") s += (s.empty() ? "" : "+") + torsion_label;
    return s.empty() ? "O" : s;
}

std::vector<Coset> enumerate_cosets(const ChabautyCase& c) {
    const auto& d = c.data();
    const long m = static_cast<long>(c.kernel().m);
    std::set<long> residues;
    for (long r : d.r_values) residues.insert(mod_floor(mpz_class(r), mpz_class(m)).get_si());
    if (static_cast<long>(d.r_values.size()) != m || static_cast<long>(residues.size()) != m) {
        throw std::invalid_argument("enumerate_cosets: r values are not a complete residue system mod " +
                                    std::to_string(m));
    }
    std::vector<Coset> out;
    for (long r : d.r_values) {
        const CurvePoint rp = scalar_mul(c.curve(), r, d.generator.point);
        for (const auto& t : d.torsion) out.push_back({r, t.label, point_add(c.curve(), rp, t.point)});
    }
    return out;
}

std::string outcome_name(CosetOutcome o) {
    switch (o) {
        case CosetOutcome::rejected_theta_const: return "rejected_theta_const";
        case CosetOutcome::rejected_qnr: return "rejected_qnr";
        case CosetOutcome::roots: return "roots";
        case CosetOutcome::uncertified: return "uncertified";
    }
    return "?";
}

CosetReport analyze_coset(const ChabautyCase& c, const Coset& coset) {
    const auto& d = c.data();
    CosetReport rep;
    rep.coset = coset;
    rep.kind = theta_kind_for(coset.base, d.prime);
    try {
        rep.theta = theta_series(c.formal_group(), d.beta, coset.base, c.zq(), d.prime,
                                 {c.precision().n, c.precision().j});
        const ThetaVector& th = *rep.theta;

        for (int i = 1; i < th.components(); ++i) {
            int v = 0;
            if (dominant_constant(th, i, &v)) {
                rep.outcome = CosetOutcome::rejected_theta_const;
                rep.rejecting_component = i;
                rep.rejecting_valuation = v;
                rep.diagnostic = "theta_" + std::to_string(i) + "(0) has valuation " + std::to_string(v) +
                                 " below every other term";
                return rep;
            }
        }

        if (d.mode == RationalityMode::square && d.prime != 2) {
            if (const auto c0 = constant_residue(th); c0 && legendre(*c0, static_cast<long>(d.prime)) == -1) {
                rep.outcome = CosetOutcome::rejected_qnr;
                rep.nonresidue = *c0;
                rep.diagnostic = "theta_0(n) = " + std::to_string(*c0) + " mod " + std::to_string(d.prime) +
                                 " for all n, a non-residue";
                return rep;
            }
        }

        std::map<long, CurvePoint> exact;
        rep.known_roots.assign(static_cast<std::size_t>(th.components()), {});
        for (long n = -kKnownRootRange; n <= kKnownRootRange; ++n) {
            const CurvePoint pt = point_at(c, coset, n);
            exact.emplace(n, pt);
            if (pt.is_infinity() && rep.kind != ThetaKind::inv_beta_x) continue;
            const NfElement val = theta_exact_value(c.curve(), rep.kind, d.beta, pt);
            for (int i = 1; i < th.components(); ++i) {
                if (val.coords()[static_cast<std::size_t>(i)] == 0) rep.known_roots[static_cast<std::size_t>(i)].insert(n);
            }
        }

        rep.verdict = rationality_roots(th, rep.known_roots);
        if (!rep.verdict->complete) {
            rep.outcome = CosetOutcome::uncertified;
            for (const auto& comp : rep.verdict->components) {
                if (!comp.diagnostic.empty()) rep.diagnostic += (rep.diagnostic.empty() ? "" : "; ") + comp.diagnostic;
                if (comp.precision_demand > 0) {
                    rep.precision_demand = std::max(rep.precision_demand.value_or(0), comp.precision_demand);
                }
            }
            return rep;
        }
        rep.outcome = CosetOutcome::roots;
        for (long n : rep.verdict->roots) {
            auto it = exact.find(n);
            const CurvePoint pt = it != exact.end() ? it->second : point_at(c, coset, n);
            RootPoint rp{n, pt, std::nullopt, std::nullopt, std::nullopt};
            if (!pt.is_infinity()) {
                rp.beta_x = d.beta * pt.x();
                if (rp.beta_x->is_rational()) {
                    rp.rational_value = rp.beta_x->coords()[0];
                    if (sgn(*rp.rational_value) >= 0) rp.square_root = exact_sqrt(*rp.rational_value);
                }
            }
            rep.points.push_back(std::move(rp));
        }
    } catch (const PrecisionError& e) {
        rep.outcome = CosetOutcome::uncertified;
        rep.diagnostic = e.what();
        if (e.required_precision() > 0) rep.precision_demand = e.required_precision();
    }
    return rep;
}

bool theta_cross_check(const ChabautyCase& c, const Coset& coset, const ThetaVector& theta, long n,
                       std::string* detail) {
    const auto& d = c.data();
    const CurvePoint pt = point_at(c, coset, n);
    if (pt.is_infinity() && theta.kind != ThetaKind::inv_beta_x) {
        if (detail) *detail = "P + nQ is infinity";
        return false;
    }
    const NfElement exact = theta_exact_value(c.curve(), theta.kind, d.beta, pt);
    const PadicNfElement approx = theta.evaluate(n);
    const PadicNfElement lifted = padic_lift(exact, d.prime, approx.precision());
    const bool ok = approx.congruent(lifted);
    if (detail) *detail = "series " + approx.str() + ", exact " + lifted.str();
    return ok;
}

std::vector<BackSubstitution> back_substitute(const std::string& case_label, const mpq_class& value) {
    BackSubstitution b{value, std::nullopt, false, {}, ""};
    if (sgn(value) >= 0) b.u = exact_sqrt(value);
    if (!b.u) {
        b.reason = "beta*x is not a rational square";
        return {b};
    }
    const mpq_class u = *b.u;
    if (case_label == "u12") {
        // Q/P^2 = 1 - 2u^2, P = square, then the remaining conditions of the table row.
        b.genus9 = genus9_check(u);
        const mpq_class ratio = 1 - 2 * u * u;
        const auto p = exact_sqrt(mpz_class(ratio.get_den()));
        if (!p) {
            b.reason = "Q/P^2 = " + mpq_str(ratio) + " has non-square denominator";
        } else if (!b.genus9) {
            b.reason = "genus-9 system fails at u = " + mpq_str(u);
        } else {
            const LucasParams lp(*p, ratio.get_num());
            if (exact_sqrt(lucas_u(lp, 12)) && lucas_u(lp, 12) != 0) {
                b.pairs.push_back(lp);
                b.reason = "U_12" + lp.str() + " = " + lucas_u(lp, 12).get_str();
            } else {
                b.reason = "U_12" + lp.str() + " is not a nonzero square";
            }
        }
    } else if (case_label == "u9") {
        // P^2/R^2 = beta*x, Q = P^2 - 3R^2.
        const mpz_class a = u.get_num(), r = u.get_den();
        if (a == 0) {
            b.reason = "P = 0";
        } else {
            for (const mpz_class& p : {mpz_class(-a), a}) {
                const mpz_class q = p * p - 3 * r * r;
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                if (q == 0 || g != 1) continue;
                const LucasParams lp(p, q);
                const mpz_class u9 = lucas_u(lp, 9);
                if (u9 != 0 && exact_sqrt(u9)) b.pairs.push_back(lp);
            }
            b.reason = b.pairs.empty() ? "no coprime pair with U_9 a nonzero square"
                                       : "P/R = +-" + mpq_str(u) + ", Q = P^2 - 3R^2";
        }
    } else {
        throw std::invalid_argument("back_substitute: unknown case " + case_label);
    }
    return {b};
}

namespace {

CaseReport finish(const ChabautyCase& c, std::vector<CosetReport> cosets) {
    const auto& d = c.data();
    CaseReport r;
    r.case_label = d.case_label;
    r.curve_label = d.label;
    r.prime = d.prime;
    r.kernel_m = c.kernel().m;
    r.kernel_z_valuation = c.kernel().z_valuation;
    r.precision = c.precision();
    r.cosets = std::move(cosets);
    r.complete = std::all_of(r.cosets.begin(), r.cosets.end(),
                             [](const CosetReport& x) { return x.outcome != CosetOutcome::uncertified; });
    std::set<mpq_class> values;
    for (const auto& cr : r.cosets) {
        for (const auto& p : cr.points) {
            if (!p.rational_value) continue;
            if (d.mode == RationalityMode::square && !p.square_root) continue;
            values.insert(*p.rational_value);
        }
    }
    r.surviving_values.assign(values.begin(), values.end());
    std::set<LucasParams> sols;
    for (const auto& v : r.surviving_values) {
        for (auto& b : back_substitute(d.case_label, v)) {
            for (const auto& lp : b.pairs) sols.insert(lp);
            r.substitutions.push_back(std::move(b));
        }
    }
    r.solutions.assign(sols.begin(), sols.end());
    return r;
}

}  // namespace

CaseReport run_case(const ChabautyCase& c) {
    const auto cosets = enumerate_cosets(c);
    std::vector<CosetReport> reports(cosets.size());
    std::vector<std::exception_ptr> errors(cosets.size());
    const long count = static_cast<long>(cosets.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            reports[k] = analyze_coset(c, cosets[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return finish(c, std::move(reports));
}

CaseReport run_case_serial(const ChabautyCase& c) {
    std::vector<CosetReport> reports;
    for (const auto& coset : enumerate_cosets(c)) reports.push_back(analyze_coset(c, coset));
    return finish(c, std::move(reports));
}

nlohmann::json case_report_json(const CaseReport& r) {
    const auto& gen = Registry::builtin().curve_case(r.case_label).generator.label;
    nlohmann::json cosets = nlohmann::json::array();
    for (const auto& cr : r.cosets) {
        nlohmann::json j{{"r", cr.coset.r},
                         {"torsion", cr.coset.torsion_label},
                         {"label", cr.coset.label(gen)},
                         {"base_point", point_str(cr.coset.base)},
                         {"kind", cr.kind == ThetaKind::beta_x ? "beta_x" : "inv_beta_x"},
                         {"outcome", outcome_name(cr.outcome)}};
        if (cr.outcome == CosetOutcome::rejected_theta_const) {
            j["rejecting_component"] = cr.rejecting_component;
            j["rejecting_valuation"] = cr.rejecting_valuation;
        }
        if (cr.nonresidue) j["nonresidue"] = *cr.nonresidue;
        if (cr.verdict) {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& comp : cr.verdict->components) {
                nlohmann::json cj{{"component", comp.component},
                                  {"method", root_method_name(comp.method)},
                                  {"roots", comp.roots}};
                if (comp.method == RootMethod::factored_dominant) cj["factored_power"] = comp.factored_power;
                if (comp.strassman) {
                    cj["strassman"] = {{"bound", comp.strassman->bound},
                                       {"min_valuation", comp.strassman->min_valuation},
                                       {"tail_valuation", comp.strassman->tail_valuation}};
                }
                if (!comp.diagnostic.empty()) cj["diagnostic"] = comp.diagnostic;
                if (comp.precision_demand > 0) cj["precision_demand"] = comp.precision_demand;
                comps.push_back(cj);
            }
            j["roots"] = cr.verdict->roots;
            j["certificates"] = comps;
        }
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : cr.points) {
            nlohmann::json pj{{"n", p.n}, {"point", point_str(p.point)}};
            if (p.beta_x) pj["beta_x"] = p.beta_x->str();
            if (p.rational_value) pj["rational_value"] = mpq_str(*p.rational_value);
            if (p.square_root) pj["u"] = mpq_str(*p.square_root);
            pts.push_back(pj);
        }
        j["points"] = pts;
        if (cr.theta) j["theta"] = leading_terms_json(*cr.theta);
        if (!cr.diagnostic.empty()) j["diagnostic"] = cr.diagnostic;
        if (cr.precision_demand) j["precision_demand"] = *cr.precision_demand;
        cosets.push_back(j);
    }
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& b : r.substitutions) {
        nlohmann::json bj{{"value", mpq_str(b.value)}, {"reason", b.reason}};
        if (b.u) bj["u"] = mpq_str(*b.u);
        if (r.case_label == "u12") bj["genus9"] = b.genus9;
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& lp : b.pairs) pairs.push_back({lp.p().get_si(), lp.q().get_si()});
        bj["pairs"] = pairs;
        subs.push_back(bj);
    }
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : r.surviving_values) values.push_back(mpq_str(v));
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& lp : r.solutions) sols.push_back({lp.p().get_si(), lp.q().get_si()});
    return {{"case", r.case_label},
            {"curve", r.curve_label},
            {"prime", r.prime},
            {"kernel_multiple", {{"m", r.kernel_m}, {"z_valuation", r.kernel_z_valuation}}},
            {"precision", {{"N", r.precision.n}, {"M", r.precision.m}, {"J", r.precision.j}}},
            {"cosets", cosets},
            {"surviving_values", values},
            {"back_substitution", subs},
            {"solutions", sols},
            {"verdict", r.complete ? "COMPLETE" : "INCOMPLETE"}};
}

}  // namespace lucasq
