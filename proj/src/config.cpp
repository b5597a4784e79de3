#include "lucasq/config.hpp"

#include <stdexcept>

#include "lucasq/padic.hpp"
#include "registry_data.hpp"

namespace lucasq {

namespace {

NfElement parse_element(const NumberField& f, const nlohmann::json& arr) {
    std::vector<mpq_class> v;
    for (const auto& c : arr) {
        mpq_class q(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long>()));
        q.canonicalize();
        v.push_back(q);
    }
    if (static_cast<int>(v.size()) != f.degree()) {
        throw std::invalid_argument("registry: coordinate vector of wrong length for field " + f.name());
    }
    return f.element(std::move(v));
}

void check_schema(const nlohmann::json& j, const char* what) {
    if (j.value("schema_version", 0) != Registry::schema_version) {
        throw std::invalid_argument(std::string("registry: unsupported schema_version in ") + what);
    }
}

void validate_field(const NumberField& f) {
    if (!f.has_sigma()) return;
    const NfElement a = f.generator();
    const NfElement s = apply_sigma(a);
    // sigma(alpha) must be a root of min_poly.
    NfElement acc = f.zero();
    const auto& poly = f.min_poly();
    for (std::size_t i = poly.size(); i-- > 0;) acc = acc * s + f.scalar(mpq_class(poly[i]));
    if (!acc.is_zero()) throw std::invalid_argument("registry: sigma(alpha) is not a root in " + f.name());
    if (!(apply_sigma(apply_sigma(s)) == a)) {
        throw std::invalid_argument("registry: sigma^3 is not the identity in " + f.name());
    }
}

}  // namespace

Registry Registry::from_json(const nlohmann::json& fields, const nlohmann::json& curves) {
    check_schema(fields, "fields");
    check_schema(curves, "curves");
    Registry reg;
    for (const auto& fj : fields.at("fields")) {
        auto f = std::make_unique<NumberField>(NumberField::from_json(fj));
        validate_field(*f);
        const std::string name = f->name();
        reg.fields_.emplace(name, std::move(f));
    }
    for (const auto& cj : curves.at("curves")) {
        auto cc = std::make_unique<CurveCase>();
        cc->label = cj.at("label").get<std::string>();
        cc->case_label = cj.at("case").get<std::string>();
        cc->field = &reg.field(cj.at("field").get<std::string>());
        const NumberField& f = *cc->field;
        const auto& a = cj.at("a");
        cc->curve = std::make_unique<WeierstrassCurve>(
            cc->label, parse_element(f, a.at("a1")), parse_element(f, a.at("a2")),
            parse_element(f, a.at("a3")), parse_element(f, a.at("a4")), parse_element(f, a.at("a6")));
        const auto& g = cj.at("generator");
        cc->generator = {g.at("label").get<std::string>(),
                         cc->curve->point(parse_element(f, g.at("x")), parse_element(f, g.at("y")))};
        for (const auto& t : cj.at("torsion")) {
            LabeledPoint lp{t.at("label").get<std::string>(), CurvePoint::infinity()};
            if (t.contains("x")) lp.point = cc->curve->point(parse_element(f, t.at("x")), parse_element(f, t.at("y")));
            if (!scalar_mul(*cc->curve, 2, lp.point).is_infinity()) {
                throw std::invalid_argument("registry: torsion point " + lp.label + " is not 2-torsion");
            }
            cc->torsion.push_back(std::move(lp));
        }
        cc->prime = cj.at("prime").get<unsigned long>();
        if (!certify_inert(f, cc->prime)) {
            throw std::invalid_argument("registry: prime not certified inert for " + cc->label);
        }
        if (!cc->curve->integral_at(cc->prime) ||
            !reduces_nonsingular(*cc->curve, cc->generator.point, cc->prime)) {
            throw std::invalid_argument("registry: " + cc->label +
                                        " is not integral or its generator reduces to the singular point");
        }
        cc->beta = parse_element(f, cj.at("beta"));
        if (!padic_lift(cc->beta, cc->prime, 1).is_unit()) {
            throw std::invalid_argument("registry: beta is not a p-adic unit for " + cc->label);
        }
        for (const auto& r : cj.at("r_values")) cc->r_values.push_back(r.get<long>());
        const std::string mode = cj.at("mode").get<std::string>();
        if (mode == "square") {
            cc->mode = RationalityMode::square;
        } else if (mode == "rational") {
            cc->mode = RationalityMode::rational;
        } else {
            throw std::invalid_argument("registry: unknown mode " + mode);
        }
        const auto& pr = cj.at("precision");
        cc->precision = {pr.at("N").get<int>(), pr.at("M").get<int>(), pr.at("J").get<int>()};
        for (const auto& s : cj.value("annotations", nlohmann::json::array())) {
            cc->annotations.push_back(s.get<std::string>());
        }
        const std::string key = cc->case_label;
        reg.cases_.emplace(key, std::move(cc));
    }
    return reg;
}

const Registry& Registry::builtin() {
    static const Registry reg = from_json(nlohmann::json::parse(builtin_fields_json()),
                                          nlohmann::json::parse(builtin_curves_json()));
    return reg;
}

const NumberField& Registry::field(const std::string& name) const {
    const auto it = fields_.find(name);
    if (it == fields_.end()) throw std::out_of_range("registry: unknown field " + name);
    return *it->second;
}

const CurveCase& Registry::curve_case(const std::string& case_label) const {
    const auto it = cases_.find(case_label);
    if (it == cases_.end()) throw std::out_of_range("registry: unknown case " + case_label);
    return *it->second;
}

std::vector<std::string> Registry::case_labels() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : cases_) out.push_back(k);
    return out;
}

const char* builtin_fields_json() { return kFieldsJson; }
const char* builtin_curves_json() { return kCurvesJson; }

}  // namespace lucasq
