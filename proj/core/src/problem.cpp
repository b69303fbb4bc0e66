#include "kstab/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kstab/errors.hpp"
#include "kstab/hilbert.hpp"
#include "kstab/parse.hpp"

namespace kstab {

using ordered_json = nlohmann::ordered_json;

namespace {

Rational json_to_rational(const ordered_json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_number_float()) return Rational::from_double(v.get<double>());
    if (v.is_string()) return Rational::from_string(v.get<std::string>());
    throw InputError(where + ": expected an integer, float, or \"a/b\" string");
}

long long json_to_int(const ordered_json& v, const std::string& where) {
    if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
    return v.get<long long>();
}

} // namespace

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Problem load_problem_text(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw InputError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("problem file must be a JSON object");

    if (!doc.contains("torus_rank")) throw InputError("missing field: torus_rank");
    long long k = json_to_int(doc["torus_rank"], "torus_rank");
    if (k < 1 || k > 16) throw InputError("torus_rank must be in [1, 16]");

    if (!doc.contains("variables") || !doc["variables"].is_array() || doc["variables"].empty())
        throw InputError("missing or empty field: variables");
    std::vector<std::string> names;
    std::vector<VarKind> kinds;
    std::vector<std::vector<long long>> weights;
    for (const auto& v : doc["variables"]) {
        if (!v.is_object()) throw InputError("variables[]: expected objects");
        if (!v.contains("name") || !v["name"].is_string())
            throw InputError("variables[]: missing string field 'name'");
        names.push_back(v["name"].get<std::string>());
        if (!v.contains("kind") || !v["kind"].is_string())
            throw InputError("variables[]: missing field 'kind'");
        std::string kind = v["kind"].get<std::string>();
        if (kind == "projective") kinds.push_back(VarKind::Projective);
        else if (kind == "affine") kinds.push_back(VarKind::Affine);
        else throw InputError("variables[].kind must be \"projective\" or \"affine\"");
        if (!v.contains("weight") || !v["weight"].is_array())
            throw InputError("variables[]: missing array field 'weight'");
        std::vector<long long> w;
        for (const auto& c : v["weight"]) w.push_back(json_to_int(c, "variables[].weight"));
        if (w.size() != static_cast<size_t>(k))
            throw InputError("variables[].weight length must equal torus_rank");
        weights.push_back(std::move(w));
    }
    VariableTable vars = VariableTable::make(std::move(names), std::move(kinds));

    long long p = doc.contains("p") ? json_to_int(doc["p"], "p") : 1;
    if (p < 1) throw InputError("p must be a positive integer");

    bool n_auto = false;
    long long n_user = 1;
    if (!doc.contains("n")) throw InputError("missing field: n (integer or \"auto\")");
    if (doc["n"].is_string()) {
        if (doc["n"].get<std::string>() != "auto")
            throw InputError("n must be a positive integer or \"auto\"");
        n_auto = true;
    } else {
        n_user = json_to_int(doc["n"], "n");
        if (n_user < 1) throw InputError("n must be a positive integer");
    }

    // Construct with a placeholder when n is auto; re-made below.
    auto setup = WeightedSetup::make(vars, static_cast<int>(k), weights, p, n_auto ? 1 : n_user);

    std::vector<Polynomial> gens;
    std::vector<std::string> gen_strings;
    if (doc.contains("ideal")) {
        if (!doc["ideal"].is_array()) throw InputError("ideal must be an array of polynomial strings");
        for (const auto& g : doc["ideal"]) {
            if (!g.is_string()) throw InputError("ideal[]: expected polynomial strings");
            gens.push_back(parse_polynomial(g.get<std::string>(), setup->vars));
        }
    }

    Problem problem;
    problem.n_auto = n_auto;

    {
        // A throwaway ideal for dimension resolution; generators are
        // homogeneity-checked here, which does not depend on n.
        Ideal probe(setup, gens);
        problem.cone_dim = krull_dim(probe);
    }
    long long n_final = n_user;
    if (n_auto) {
        n_final = problem.cone_dim - 1;
        if (n_final < 1)
            throw InputError("\"auto\" n resolved to " + std::to_string(n_final) +
                             "; supply n explicitly");
    } else if (problem.cone_dim - 1 != n_user) {
        problem.warnings.push_back("declared n=" + std::to_string(n_user) +
                                   " differs from krull_dim(S/I)-1=" +
                                   std::to_string(problem.cone_dim - 1));
    }
    setup = WeightedSetup::make(setup->vars, static_cast<int>(k), setup->weights, p, n_final);
    problem.setup = setup;
    problem.ideal = std::make_shared<Ideal>(setup, gens);
    problem.n_resolved = n_final;

    if (doc.contains("xi")) {
        if (!doc["xi"].is_array() || doc["xi"].size() != static_cast<size_t>(k))
            throw InputError("xi must be an array of torus_rank entries");
        ReebVector xi;
        for (const auto& c : doc["xi"]) xi.c.push_back(json_to_rational(c, "xi"));
        problem.default_xi = std::move(xi);
    }
    if (doc.contains("rho_candidates")) {
        if (!doc["rho_candidates"].is_array()) throw InputError("rho_candidates must be an array");
        for (const auto& r : doc["rho_candidates"]) {
            if (!r.is_array() || r.size() != setup->nvars())
                throw InputError("rho_candidates[]: expected one integer per variable");
            std::vector<long long> rho;
            for (const auto& c : r) rho.push_back(json_to_int(c, "rho_candidates[]"));
            problem.rho_candidates.push_back(std::move(rho));
        }
    }

    // Canonical echo: normalized field order, generators reprinted
    // canonically, n resolved.
    ordered_json echo;
    echo["torus_rank"] = k;
    echo["variables"] = ordered_json::array();
    for (size_t v = 0; v < setup->nvars(); ++v) {
        ordered_json jv;
        jv["name"] = setup->vars.names[v];
        jv["kind"] = setup->vars.projective(v) ? "projective" : "affine";
        jv["weight"] = setup->weights[v];
        echo["variables"].push_back(std::move(jv));
    }
    echo["ideal"] = ordered_json::array();
    for (const auto& g : problem.ideal->generators())
        echo["ideal"].push_back(format_polynomial(g, setup->vars));
    echo["p"] = p;
    echo["n"] = n_final;
    if (n_auto) echo["n_was_auto"] = true;
    if (problem.default_xi) {
        echo["xi"] = ordered_json::array();
        for (const auto& c : problem.default_xi->c) echo["xi"].push_back(c.str());
    }
    if (!problem.rho_candidates.empty()) echo["rho_candidates"] = problem.rho_candidates;
    problem.canonical_json = echo.dump();
    problem.content_hash = fnv1a_hex(problem.canonical_json);
    return problem;
}

Problem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_problem_text(buf.str());
}

} // namespace kstab
