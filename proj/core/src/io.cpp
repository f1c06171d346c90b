#include "anfold/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <utility>

namespace anfold::io {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

void check_schema(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": top level must be an object");
    if (!j.contains("schema_version"))
        throw ParseError(path + ": missing schema_version");
    if (j["schema_version"] != kSchemaVersion)
        throw ParseError(path + ": unsupported schema_version");
}

// Reads {"exp": [...], "val": ...} entries into a jet over `vars` variables.
jet::Jet jet_from_entries(const json& entries, int vars, int degree, const std::string& where) {
    jet::Jet out(vars, degree);
    if (!entries.is_array()) throw ParseError(where + ": coeffs must be an array");
    for (const auto& c : entries) {
        if (!c.is_object() || !c.contains("exp") || !c.contains("val"))
            throw ParseError(where + ": coefficient entries need exp and val");
        std::vector<int> e;
        try {
            e = c["exp"].get<std::vector<int>>();
        } catch (const json::exception&) {
            throw ParseError(where + ": exp must be an integer array");
        }
        if (static_cast<int>(e.size()) != vars)
            throw ParseError(where + ": exp length must equal the variable count");
        for (int v : e)
            if (v < 0) throw ParseError(where + ": exponents must be non-negative");
        if (!c["val"].is_number()) throw ParseError(where + ": val must be a number");
        int total = 0;
        for (int v : e) total += v;
        if (total > degree) throw ParseError(where + ": exponent exceeds the degree bound");
        out.set_coeff(e, c["val"].get<double>());
    }
    return out;
}

json jet_to_entries(const jet::Jet& j) {
    json entries = json::array();
    const auto& basis = j.basis();
    for (int idx = 0; idx < basis.size(); ++idx) {
        double v = j.coeff_at(idx);
        if (v == 0.0) continue;
        entries.push_back(json{{"exp", basis.exponents(idx)}, {"val", v}});
    }
    return entries;
}

json germ_to_json(const germs::GermMap& f) {
    json comps = json::array();
    for (int i = 0; i < f.target_dim(); ++i) comps.push_back(jet_to_entries(f.component(i)));
    return json{{"source_dim", f.source_dim()},
                {"target_dim", f.target_dim()},
                {"degree", f.degree()},
                {"components", comps}};
}

germs::GermMap germ_from_json(const json& j, const std::string& where) {
    for (const char* key : {"source_dim", "target_dim", "degree", "components"})
        if (!j.contains(key)) throw ParseError(where + ": missing field " + key);
    int a = j["source_dim"].get<int>();
    int b = j["target_dim"].get<int>();
    int d = j["degree"].get<int>();
    if (a < 1 || b < 0 || d < 1) throw ParseError(where + ": invalid germ dimensions");
    const json& comps = j["components"];
    if (!comps.is_array() || static_cast<int>(comps.size()) != b)
        throw ParseError(where + ": components must list target_dim entries");
    try {
        if (b == 0) return germs::GermMap(a, 0, d);
        std::vector<jet::Jet> jets;
        jets.reserve(comps.size());
        for (const auto& c : comps) jets.push_back(jet_from_entries(c, a, d, where));
        return germs::GermMap(std::move(jets));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

normalform::JetFamily read_jet_family(const std::string& path) {
    json j = load_file(path);
    check_schema(j, path);
    for (const char* key : {"n", "degree", "coeffs"})
        if (!j.contains(key)) throw ParseError(path + ": missing field " + std::string(key));
    int n = 0;
    int degree = 0;
    try {
        n = j["n"].get<int>();
        degree = j["degree"].get<int>();
    } catch (const json::exception&) {
        throw ParseError(path + ": n and degree must be integers");
    }
    if (n < 1) throw ParseError(path + ": n must be >= 1");
    if (degree < 2) throw ParseError(path + ": degree must be >= 2");
    try {
        return normalform::JetFamily(n, jet_from_entries(j["coeffs"], n + 1, degree, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_jet_family(const std::string& path, const normalform::JetFamily& fam) {
    save_file(path, json{{"schema_version", kSchemaVersion},
                         {"n", fam.n},
                         {"degree", fam.degree()},
                         {"coeffs", jet_to_entries(fam.H)}});
}

periods::WeightFunction read_weight(const std::string& path) {
    json j = load_file(path);
    check_schema(j, path);
    for (const char* key : {"lambda_vars", "terms"})
        if (!j.contains(key)) throw ParseError(path + ": missing field " + std::string(key));
    int m = 0;
    try {
        m = j["lambda_vars"].get<int>();
    } catch (const json::exception&) {
        throw ParseError(path + ": lambda_vars must be an integer");
    }
    if (!j["terms"].is_array()) throw ParseError(path + ": terms must be an array");
    std::vector<periods::WeightFunction::Term> terms;
    for (const auto& t : j["terms"]) {
        for (const char* key : {"p", "q", "lambda", "coeff"})
            if (!t.contains(key)) throw ParseError(path + ": weight terms need p, q, lambda, coeff");
        periods::WeightFunction::Term term;
        try {
            term.p_exp = t["p"].get<int>();
            term.q_exp = t["q"].get<int>();
            term.lambda_exp = t["lambda"].get<std::vector<int>>();
            term.coeff = t["coeff"].get<double>();
        } catch (const json::exception&) {
            throw ParseError(path + ": malformed weight term");
        }
        terms.push_back(std::move(term));
    }
    try {
        return periods::WeightFunction(m, std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_weight(const std::string& path, const periods::WeightFunction& g) {
    json terms = json::array();
    for (const auto& t : g.terms()) {
        terms.push_back(json{
            {"p", t.p_exp}, {"q", t.q_exp}, {"lambda", t.lambda_exp}, {"coeff", t.coeff}});
    }
    save_file(path, json{{"schema_version", kSchemaVersion},
                         {"lambda_vars", g.lambda_vars()},
                         {"terms", terms}});
}

germs::GermMap read_germ(const std::string& path) {
    json j = load_file(path);
    check_schema(j, path);
    return germ_from_json(j, path);
}

void write_germ(const std::string& path, const germs::GermMap& f) {
    json j = germ_to_json(f);
    j["schema_version"] = kSchemaVersion;
    save_file(path, j);
}

germs::SemiGlobalInvariant read_invariant(const std::string& path) {
    json j = load_file(path);
    check_schema(j, path);
    for (const char* key : {"n", "eta", "ell", "beta", "J", "S"})
        if (!j.contains(key)) throw ParseError(path + ": missing field " + std::string(key));
    germs::SemiGlobalInvariant inv;
    try {
        inv.n = j["n"].get<int>();
        inv.eta = j["eta"].get<int>();
        inv.ell = j["ell"].get<int>();
        inv.beta = j["beta"].get<std::vector<int>>();
    } catch (const json::exception&) {
        throw ParseError(path + ": malformed invariant header");
    }
    inv.J_canonical = germ_from_json(j["J"], path);
    if (!j["S"].is_array() || static_cast<int>(j["S"].size()) != inv.ell)
        throw ParseError(path + ": S must list ell germs");
    inv.S.clear();
    for (const auto& s : j["S"]) inv.S.push_back(germ_from_json(s, path));
    return inv;
}

void write_invariant(const std::string& path, const germs::SemiGlobalInvariant& inv) {
    json s_list = json::array();
    for (const auto& s : inv.S) s_list.push_back(germ_to_json(s));
    save_file(path, json{{"schema_version", kSchemaVersion},
                         {"n", inv.n},
                         {"eta", inv.eta},
                         {"ell", inv.ell},
                         {"beta", inv.beta},
                         {"J", germ_to_json(inv.J_canonical)},
                         {"S", s_list}});
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& r : rows) {
        if (r.size() != header.size())
            throw std::invalid_argument("csv row width differs from the header");
        emit(r);
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace anfold::io
