#include "lyap/system.hpp"
#include "lyap/markov.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lyap {

using nlohmann::json;
using nlohmann::ordered_json;

int SystemSpec::letter(const std::string& label) const
{
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == label)
            return static_cast<int>(i);
    throw ValidationError("unknown letter '" + label + "'");
}

bool SystemSpec::parametrized() const
{
    for (const auto& m : matrices)
        for (const auto& e : m)
            if (depends_on_t(e))
                return true;
    for (const auto& row : transition)
        for (const auto& e : row)
            if (depends_on_t(e))
                return true;
    return false;
}

namespace {

std::string as_string(const json& j, const std::string& where)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    throw IOError(where + ": numbers must be given as strings");
}

Expr field_expr(const json& j, const std::string& where)
{
    std::string s = as_string(j, where);
    try {
        return parse_expr(s);
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what(), e.offset);
    }
}

std::array<Expr, 4> matrix2(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
        throw IOError(where + ": expected a 2x2 array");
    return {field_expr(j[0][0], where), field_expr(j[0][1], where), field_expr(j[1][0], where), field_expr(j[1][1], where)};
}

Endpoint endpoint(const json& j, const std::string& where)
{
    std::string s = as_string(j, where);
    if (s == "inf" || s == "infinity" || s == "-inf")
        return {nullptr};
    return {field_expr(j, where)};
}

std::string expr_string(const Expr& e)
{
    if (e->kind == ExprNode::Const)
        return e->value.str();
    return print(e);
}

json matrix_json(const std::array<Expr, 4>& m)
{
    return json::array({json::array({expr_string(m[0]), expr_string(m[1])}),
                        json::array({expr_string(m[2]), expr_string(m[3])})});
}

std::string endpoint_string(const Endpoint& e) { return e.infinite() ? "inf" : expr_string(e.slope); }

} // namespace

SystemSpec parse_system(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    SystemSpec s;
    if (!j.contains("alphabet") || !j["alphabet"].is_array() || j["alphabet"].empty())
        throw IOError("missing alphabet");
    for (const auto& l : j["alphabet"])
        s.alphabet.push_back(l.get<std::string>());
    const int n = static_cast<int>(s.alphabet.size());

    if (!j.contains("matrices"))
        throw IOError("missing matrices");
    for (const auto& l : s.alphabet) {
        if (!j["matrices"].contains(l))
            throw IOError("missing matrix for letter " + l);
        s.matrices.push_back(matrix2(j["matrices"][l], "matrices." + l));
    }

    const auto& T = j.at("transition");
    if (!T.is_array() || static_cast<int>(T.size()) != n)
        throw IOError("transition must be an n x n array");
    for (int i = 0; i < n; ++i) {
        if (!T[i].is_array() || static_cast<int>(T[i].size()) != n)
            throw IOError("transition row " + std::to_string(i) + " has the wrong length");
        std::vector<Expr> row;
        for (int k = 0; k < n; ++k)
            row.push_back(field_expr(T[i][k], "transition[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        s.transition.push_back(row);
    }

    s.multicone.assign(n, {});
    if (j.contains("multicone"))
        for (const auto& [label, arcs] : j["multicone"].items()) {
            int i = s.letter(label);
            for (const auto& arc : arcs) {
                if (!arc.is_array() || arc.size() != 2)
                    throw IOError("multicone." + label + ": arcs are pairs of endpoints");
                s.multicone[i].push_back({endpoint(arc[0], "multicone." + label), endpoint(arc[1], "multicone." + label)});
            }
        }

    if (j.contains("charts"))
        for (const auto& [key, m] : j["charts"].items()) {
            auto colon = key.find(':');
            std::string label = key.substr(0, colon);
            int comp = colon == std::string::npos ? 1 : std::stoi(key.substr(colon + 1));
            int i = s.letter(label);
            if (comp < 1 || comp > static_cast<int>(s.multicone[i].size()))
                throw IOError("chart " + key + " refers to a missing component");
            s.charts[{i, comp - 1}] = matrix2(m, "charts." + key);
        }

    if (j.contains("parameter") && j["parameter"].contains("t0"))
        s.t0 = parse_rational(as_string(j["parameter"]["t0"], "parameter.t0"));
    if (j.contains("base_period"))
        s.base_period = j["base_period"].get<int>();
    if (s.base_period < 1)
        throw IOError("base_period must be positive");

    if (j.contains("options")) {
        const auto& o = j["options"];
        Options& op = s.options;
        if (o.contains("precision_bits"))
            op.precision_bits = o["precision_bits"].get<unsigned>();
        if (o.contains("epsilon"))
            op.epsilon = as_string(o["epsilon"], "options.epsilon");
        if (o.contains("order"))
            op.order = o["order"].get<int>();
        if (o.contains("disk_radius"))
            op.disk_radius = as_string(o["disk_radius"], "options.disk_radius");
        if (o.contains("rho_bar"))
            op.rho_bar = as_string(o["rho_bar"], "options.rho_bar");
        if (o.contains("omega_constants")) {
            std::map<std::string, std::string> c;
            for (const auto& [k, v] : o["omega_constants"].items())
                c[k] = as_string(v, "options.omega_constants." + k);
            op.omega_constants = c;
        }
        if (o.contains("mode"))
            op.mode = o["mode"].get<std::string>();
        if (op.mode != "float" && op.mode != "interval")
            throw IOError("options.mode must be float or interval");
        if (o.contains("class_choice"))
            op.class_choice = o["class_choice"].get<int>();
    }
    return s;
}

SystemSpec read_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IOError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

std::string write_system(const SystemSpec& s)
{
    ordered_json j;
    j["alphabet"] = s.alphabet;
    ordered_json mats = ordered_json::object();
    for (std::size_t i = 0; i < s.alphabet.size(); ++i)
        mats[s.alphabet[i]] = matrix_json(s.matrices[i]);
    j["matrices"] = mats;
    json T = json::array();
    for (const auto& row : s.transition) {
        json r = json::array();
        for (const auto& e : row)
            r.push_back(expr_string(e));
        T.push_back(r);
    }
    j["transition"] = T;
    ordered_json mc = ordered_json::object();
    for (std::size_t i = 0; i < s.alphabet.size(); ++i) {
        if (s.multicone[i].empty())
            continue;
        json arcs = json::array();
        for (const auto& a : s.multicone[i])
            arcs.push_back(json::array({endpoint_string(a.p), endpoint_string(a.q)}));
        mc[s.alphabet[i]] = arcs;
    }
    j["multicone"] = mc;
    if (!s.charts.empty()) {
        ordered_json ch = ordered_json::object();
        for (const auto& [k, m] : s.charts)
            ch[s.alphabet[k.first] + ":" + std::to_string(k.second + 1)] = matrix_json(m);
        j["charts"] = ch;
    }
    if (s.t0)
        j["parameter"] = {{"t0", s.t0->str()}};
    j["base_period"] = s.base_period;
    return j.dump(2) + "\n";
}

SystemSpec reduce_base(const SystemSpec& s)
{
    const int n = static_cast<int>(s.alphabet.size());
    Rational t0 = s.base_point();
    // support from the exact value at the base point when available
    Digraph g(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            auto q = try_rational(s.transition[i][k], t0);
            bool nonzero = q ? *q != 0 : eval(s.transition[i][k], to_real(t0)) != 0;
            if (nonzero)
                g[i].push_back(k);
        }
    require_irreducible(g, s.alphabet);
    int d = period(g);
    if (d == 1)
        return s;

    auto blocks = block_paths(g, d, smallest_label(s.alphabet));
    SystemSpec r;
    r.t0 = s.t0;
    r.options = s.options;
    r.base_period = s.base_period * d;
    for (const auto& b : blocks) {
        std::string label;
        for (int i : b)
            label += s.alphabet[i];
        r.alphabet.push_back(label);
        // A_{i_{d-1}} ... A_{i_0}
        std::array<Expr, 4> m = s.matrices[b[0]];
        for (std::size_t k = 1; k < b.size(); ++k) {
            const auto& a = s.matrices[b[k]];
            m = {a[0] * m[0] + a[1] * m[2], a[0] * m[1] + a[1] * m[3],
                 a[2] * m[0] + a[3] * m[2], a[2] * m[1] + a[3] * m[3]};
        }
        r.matrices.push_back(m);
    }
    const int nb = static_cast<int>(blocks.size());
    std::vector<Expr> internal(nb, constant(Rational(1)));
    for (int b = 0; b < nb; ++b)
        for (std::size_t k = 0; k + 1 < blocks[b].size(); ++k)
            internal[b] = internal[b] * s.transition[blocks[b][k]][blocks[b][k + 1]];
    for (int a = 0; a < nb; ++a) {
        std::vector<Expr> row;
        for (int b = 0; b < nb; ++b)
            row.push_back(s.transition[blocks[a].back()][blocks[b].front()] * internal[b]);
        r.transition.push_back(row);
    }
    // multicone/charts given for block labels carry over
    r.multicone.assign(nb, {});
    for (int b = 0; b < nb; ++b)
        for (int i = 0; i < n; ++i)
            if (s.alphabet[i] == r.alphabet[b]) {
                r.multicone[b] = s.multicone[i];
                for (const auto& [k, m] : s.charts)
                    if (k.first == i)
                        r.charts[{b, k.second}] = m;
            }
    return r;
}

} // namespace lyap
