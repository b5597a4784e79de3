#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "lucasq/ellcurve.hpp"
#include "lucasq/numfield.hpp"

namespace lucasq {

enum class RationalityMode { square, rational };

struct PrecisionDefaults {
    int n;  // p-adic digits
    int m;  // z-series order
    int j;  // highest n-degree kept in theta
};

struct LabeledPoint {
    std::string label;
    CurvePoint point;
};

/// Curve, Mordell-Weil data and Chabauty parameters for one case.
struct CurveCase {
    std::string label;
    std::string case_label;
    const NumberField* field;
    std::unique_ptr<WeierstrassCurve> curve;
    LabeledPoint generator;
    std::vector<LabeledPoint> torsion;
    unsigned long prime;
    NfElement beta;
    std::vector<long> r_values;
    RationalityMode mode;
    PrecisionDefaults precision;
    std::vector<std::string> annotations;
};

/// Shipped fields and curves, validated on load.
class Registry {
public:
    static const Registry& builtin();
    static Registry from_json(const nlohmann::json& fields, const nlohmann::json& curves);

    const NumberField& field(const std::string& name) const;
    const CurveCase& curve_case(const std::string& case_label) const;
    std::vector<std::string> case_labels() const;

    static constexpr int schema_version = 1;

private:
    std::map<std::string, std::unique_ptr<NumberField>> fields_;
    std::map<std::string, std::unique_ptr<CurveCase>> cases_;
};

/// Embedded data files.
const char* builtin_fields_json();
const char* builtin_curves_json();

}  // namespace lucasq
