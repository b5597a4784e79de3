#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "lucasq/chabauty.hpp"
#include "lucasq/descent.hpp"
#include "lucasq/lucas.hpp"

namespace {

using nlohmann::json;
using namespace lucasq;

constexpr int kSchemaVersion = 1;
constexpr int kComplete = 0;
constexpr int kUsage = 1;
constexpr int kIncomplete = 2;

struct Options {
    unsigned long n = 12;
    long bound = 100;
    std::string case_label = "u12";
    int precision = 0;     // N override
    int series_order = 0;  // M override
    int degree = 0;        // J override
    int count = 100;
    unsigned long seed = 1;
    std::string output;
    std::string format = "text";
};

json pair_json(const LucasParams& lp) { return {lp.p().get_si(), lp.q().get_si()}; }

json search_json(unsigned long n, long bound) {
    const auto r = search_square_terms(n, bound);
    json squares = json::array();
    for (const auto& h : r.squares) {
        squares.push_back({{"pair", pair_json(h.params)},
                           {"value", lucas_u(h.params, n).get_str()},
                           {"root", h.root.get_str()},
                           {"degenerate", h.degenerate}});
    }
    json zeros = json::array();
    for (const auto& z : r.zeros) zeros.push_back(pair_json(z));
    return {{"n", n}, {"bound", bound}, {"squares", squares}, {"zeros", zeros}};
}

std::string search_text(const json& j) {
    std::ostringstream o;
    o << "search U_" << j["n"] << " over coprime nonzero |P|,|Q| <= " << j["bound"] << "\n";
    for (const auto& s : j["squares"]) {
        o << "  (" << s["pair"][0] << "," << s["pair"][1] << ")  U = " << s["value"].get<std::string>() << " = "
          << s["root"].get<std::string>() << "^2" << (s["degenerate"].get<bool>() ? "  [degenerate]" : "") << "\n";
    }
    o << "  zero terms at " << j["zeros"].size() << " pairs (not squares)\n";
    return o.str();
}

std::string descent_text(const json& j) {
    std::ostringstream o;
    o << "descent of U_12 = square, moduli " << j["moduli"].dump() << "\n";
    auto sys_str = [](const json& s) {
        std::string out;
        for (const auto& c : s) {
            if (!out.empty()) out += ", ";
            const long m = c["multiplier"].get<long>();
            out += c["form"].get<std::string>() + " = " + (m == 1 ? "" : m == -1 ? "-" : std::to_string(m)) + "□";
        }
        return out;
    };
    for (const auto& e : j["systems"]) {
        if (e["side"] == "combined") continue;
        o << "  " << e["side"].get<std::string>() << "  {" << sys_str(e["system"]) << "}  "
          << e["verdict"].get<std::string>() << "\n";
    }
    o << "surviving table:\n";
    for (const auto& row : j["table"]) o << "  {" << sys_str(row) << "}\n";
    return o.str();
}

std::string chabauty_text(const json& j) {
    std::ostringstream o;
    o << "case " << j["case"].get<std::string>() << " (" << j["curve"].get<std::string>() << ", p = " << j["prime"]
      << ", Q = " << j["kernel_multiple"]["m"] << "*generator, N = " << j["precision"]["N"]
      << ", M = " << j["precision"]["M"] << ", J = " << j["precision"]["J"] << ")\n";
    for (const auto& c : j["cosets"]) {
        o << "  " << c["label"].get<std::string>() << ": " << c["outcome"].get<std::string>();
        if (c.contains("nonresidue")) o << " " << c["nonresidue"];
        if (c.contains("rejecting_component")) {
            o << " (theta_" << c["rejecting_component"] << "(0) valuation " << c["rejecting_valuation"] << ")";
        }
        if (c.contains("roots")) o << " n in " << c["roots"].dump();
        for (const auto& p : c["points"]) {
            o << "; n = " << p["n"] << " -> " << p["point"].get<std::string>();
            if (p.contains("rational_value")) o << ", beta*x = " << p["rational_value"].get<std::string>();
        }
        if (c.contains("diagnostic") && c["outcome"] != "rejected_theta_const") {
            o << " [" << c["diagnostic"].get<std::string>() << "]";
        }
        if (c.contains("precision_demand")) o << " [needs precision >= " << c["precision_demand"] << "]";
        o << "\n";
    }
    o << "surviving beta*x values: " << j["surviving_values"].dump() << "\n";
    for (const auto& b : j["back_substitution"]) {
        o << "  " << b["value"].get<std::string>() << ": " << b["reason"].get<std::string>() << "\n";
    }
    o << "solutions: {";
    bool first = true;
    for (const auto& s : j["solutions"]) {
        o << (first ? "" : ", ") << "(" << s[0] << "," << s[1] << ")";
        first = false;
    }
    o << "}\nverdict: " << j["verdict"].get<std::string>() << "\n";
    return o.str();
}

json chabauty_json(const Options& opt, const std::string& label) {
    const CurveCase& data = Registry::builtin().curve_case(label);
    PrecisionDefaults prec = data.precision;
    if (opt.precision > 0) prec.n = opt.precision;
    if (opt.series_order > 0) prec.m = opt.series_order;
    if (opt.degree > 0) prec.j = opt.degree;
    const ChabautyCase c(data, prec);
    json j = case_report_json(run_case(c));
    if (prec.n < data.precision.n || prec.m < data.precision.m || prec.j < data.precision.j) {
        j["warning"] = "precision below the certified defaults (N " + std::to_string(data.precision.n) + ", M " +
                       std::to_string(data.precision.m) + ", J " + std::to_string(data.precision.j) + ")";
    }
    return j;
}

json theorem2_json(const Options& opt) {
    json out{{"count", opt.count}, {"seed", opt.seed}};
    bool all = true;
    for (auto kind : {Theorem2Kind::u3, Theorem2Kind::u6}) {
        const auto samples = theorem2_samples(kind, opt.count, opt.seed);
        json fails = json::array();
        for (const auto& s : samples) {
            if (!s.holds) fails.push_back({s.a.get_str(), s.b.get_str()});
        }
        all = all && fails.empty();
        out[kind == Theorem2Kind::u3 ? "u3" : "u6"] = {{"tested", samples.size()}, {"failures", fails}};
    }
    out["verdict"] = all ? "COMPLETE" : "INCOMPLETE";
    return out;
}

std::string theorem2_text(const json& j) {
    std::ostringstream o;
    for (const char* k : {"u3", "u6"}) {
        o << k << " family: " << j[k]["tested"] << " random admissible pairs, " << j[k]["failures"].size()
          << " failures\n";
    }
    o << "verdict: " << j["verdict"].get<std::string>() << "\n";
    return o.str();
}

json solutions_of(const json& search) {
    json out = json::array();
    for (const auto& s : search["squares"]) out.push_back(s["pair"]);
    return out;
}

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* t = std::getenv("LUCASQ_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Square terms of Lucas sequences: search, descent and elliptic Chabauty"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--output", opt.output, "Write the report to this file");
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));

    auto* search = app.add_subcommand("search", "Brute-force U_n = square over a box");
    search->add_option("--n", opt.n, "Index n")->check(CLI::Range(2UL, 1000UL));
    search->add_option("--bound", opt.bound, "Box bound on |P| and |Q|")->check(CLI::PositiveNumber);

    app.add_subcommand("descent", "Local solvability of the U_12 descent systems");

    auto* chab = app.add_subcommand("chabauty", "Elliptic Chabauty for one case");
    chab->add_option("--case", opt.case_label, "Case")->check(CLI::IsMember({"u12", "u9"}));

    auto* full = app.add_subcommand("full", "Search, descent and both Chabauty cases");
    full->add_option("--bound", opt.bound, "Box bound for the search")->check(CLI::PositiveNumber);

    for (auto* sub : {chab, full}) {
        sub->add_option("--precision", opt.precision, "p-adic precision N")->check(CLI::PositiveNumber);
        sub->add_option("--series-order", opt.series_order, "Formal-group series order M")->check(CLI::PositiveNumber);
        sub->add_option("--degree", opt.degree, "Highest n-degree J")->check(CLI::PositiveNumber);
    }

    auto* t2 = app.add_subcommand("verify-theorem2", "Random checks of the U_3 and U_6 square families");
    t2->add_option("--count", opt.count, "Samples per family")->check(CLI::PositiveNumber);
    t2->add_option("--seed", opt.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    apply_thread_env();

    json report{{"schema_version", kSchemaVersion}};
    std::string text;
    bool complete = true;
    try {
        if (search->parsed()) {
            report["command"] = "search";
            report["search"] = search_json(opt.n, opt.bound);
            text = search_text(report["search"]);
        } else if (app.got_subcommand("descent")) {
            report["command"] = "descent";
            report["descent"] = survival_report_json();
            text = descent_text(report["descent"]);
        } else if (chab->parsed()) {
            report["command"] = "chabauty";
            report["chabauty"] = chabauty_json(opt, opt.case_label);
            complete = report["chabauty"]["verdict"] == "COMPLETE";
            text = chabauty_text(report["chabauty"]);
            if (report["chabauty"].contains("warning")) {
                text += "warning: " + report["chabauty"]["warning"].get<std::string>() + "\n";
            }
        } else if (full->parsed()) {
            report["command"] = "full";
            const json s12 = search_json(12, opt.bound);
            const json s9 = search_json(9, opt.bound);
            const json d = survival_report_json();
            const json c12 = chabauty_json(opt, "u12");
            const json c9 = chabauty_json(opt, "u9");
            const bool agree12 = solutions_of(s12) == c12["solutions"];
            const bool agree9 = solutions_of(s9) == c9["solutions"];
            complete = c12["verdict"] == "COMPLETE" && c9["verdict"] == "COMPLETE" && agree12 && agree9;
            report["search_u12"] = s12;
            report["search_u9"] = s9;
            report["descent"] = d;
            report["chabauty_u12"] = c12;
            report["chabauty_u9"] = c9;
            report["agreement"] = {{"u12", agree12}, {"u9", agree9}};
            report["theorem1"] = {{"u12", c12["solutions"]}, {"u9", c9["solutions"]}};
            report["verdict"] = complete ? "COMPLETE" : "INCOMPLETE";
            text = search_text(s12) + search_text(s9) + descent_text(d) + chabauty_text(c12) + chabauty_text(c9) +
                   "search agrees with Chabauty: u12 " + (agree12 ? "yes" : "no") + ", u9 " +
                   (agree9 ? "yes" : "no") + "\nTheorem 1: U_12 square iff (P,Q) in " + c12["solutions"].dump() +
                   "; U_9 square iff (P,Q) in " + c9["solutions"].dump() + "\nverdict: " +
                   (complete ? "COMPLETE" : "INCOMPLETE") + "\n";
        } else if (t2->parsed()) {
            report["command"] = "verify-theorem2";
            report["theorem2"] = theorem2_json(opt);
            complete = report["theorem2"]["verdict"] == "COMPLETE";
            text = theorem2_text(report["theorem2"]);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    const std::string body = opt.format == "json" ? report.dump(2) + "\n" : text;
    if (opt.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(opt.output);
        if (!f) {
            std::cerr << "error: cannot write " << opt.output << "\n";
            return kUsage;
        }
        f << body;
    }
    return complete ? kComplete : kIncomplete;
}
