#include "dcalc/serialize.hpp"

#include <cctype>
#include <map>
#include <json.hpp>

namespace dcalc {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw ParseError("derivation record: " + msg, 0);
}

Json path_json(const Path& p) {
    Json a = Json::array();
    for (Dir d : p)
        a.push_back(d == Dir::Right ? 1 : 0);
    return a;
}

Path path_of(const Json& j) {
    if (!j.is_array())
        bad("path must be an array");
    Path p;
    for (const auto& x : j) {
        if (!x.is_number_integer() || (x != 0 && x != 1))
            bad("path steps must be 0 or 1");
        p.push_back(x == 1 ? Dir::Right : Dir::Left);
    }
    return p;
}

Json params_json(const Params& p) {
    Json o = Json::object();
    for (const auto& [k, v] : p)
        o[k] = v;
    return o;
}

Params params_of(const Json& j) {
    if (!j.is_object())
        bad("params must be an object");
    Params p;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number_integer())
            bad("parameter " + k + " must be an integer");
        p[k] = v.get<int>();
    }
    return p;
}

Json app_json(const RuleApp& a) {
    return Json{{"rule", std::string(rule_name(a.rule))}, {"path", path_json(a.at)}, {"params", params_json(a.params)}};
}

RuleApp app_of(const Json& j) {
    if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
        bad("structural payload needs a rule name");
    const auto r = rule_from_name(j["rule"].get<std::string>());
    if (!r)
        bad("unknown structural rule " + j["rule"].get<std::string>());
    return RuleApp{*r, j.contains("path") ? path_of(j["path"]) : Path{},
                   j.contains("params") ? params_of(j["params"]) : Params{}};
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        bad(std::string("missing field '") + name + "'");
    return j[name];
}

std::string str_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_string())
        bad(std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

int int_or(const Json& params, const char* name, int dflt) {
    if (!params.contains(name))
        return dflt;
    if (!params[name].is_number_integer())
        bad(std::string("parameter '") + name + "' must be an integer");
    return params[name].get<int>();
}

HRule hrule_of(const std::string& name) {
    const auto r = hrule_from_name(name);
    if (!r)
        bad("unknown rule " + name);
    return *r;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

// hD

Json hd_json(const HDerivation& d) {
    Json params = Json::object();
    if (d.params.loc) {
        Json list = Json::array();
        for (const auto& [i, g] : d.params.loc->list)
            list.push_back(Json::array({i, g}));
        params["loc"] = Json{{"list", list}, {"index", d.params.loc->index}};
    }
    if (d.params.k)
        params["k"] = d.params.k;
    if (d.params.end >= 0)
        params["end"] = d.params.end;
    Json prem = Json::array();
    for (const auto& p : d.premises)
        prem.push_back(hd_json(p));
    return Json{{"rule", std::string(hrule_name(d.rule))}, {"sequent", d.conclusion.str()}, {"params", params},
                {"premises", prem}};
}

HDerivation hd_of(const Json& j, const Signature& sig) {
    const HRule rule = hrule_of(str_field(j, "rule"));
    HSequent s = parse_hsequent(str_field(j, "sequent"), sig);
    HParams p;
    const Json params = j.contains("params") ? j["params"] : Json::object();
    if (!params.is_object())
        bad("params must be an object");
    if (params.contains("loc")) {
        const Json& l = params["loc"];
        Locator loc;
        for (const auto& step : field(l, "list")) {
            if (!step.is_array() || step.size() != 2 || !step[0].is_number_integer() || !step[1].is_number_integer())
                bad("locator steps are [item, gap] pairs");
            loc.list.emplace_back(step[0].get<int>(), step[1].get<int>());
        }
        loc.index = int_or(l, "index", 0);
        p.loc = loc;
    }
    p.k = int_or(params, "k", 0);
    p.end = int_or(params, "end", -1);
    HDerivation d{rule, std::move(s), p, {}};
    if (j.contains("premises"))
        for (const auto& x : j["premises"])
            d.premises.push_back(hd_of(x, sig));
    return d;
}

// mD

Json md_json(const MDerivation& d) {
    Json params = Json::object();
    if (!d.structural) {
        if (!d.params.path.empty())
            params["path"] = path_json(d.params.path);
        if (d.params.k)
            params["k"] = d.params.k;
    }
    Json prem = Json::array();
    for (const auto& p : d.premises)
        prem.push_back(md_json(p));
    Json out{{"rule", d.structural ? std::string("Structural") : std::string(hrule_name(d.rule))},
             {"sequent", d.conclusion.str()},
             {"params", params}};
    if (d.structural)
        out["structural"] = app_json(*d.structural);
    out["premises"] = prem;
    return out;
}

MDerivation md_of(const Json& j, const Signature& sig) {
    const std::string name = str_field(j, "rule");
    MSequent s = parse_msequent(str_field(j, "sequent"), sig);
    std::vector<MDerivation> prem;
    if (j.contains("premises"))
        for (const auto& x : j["premises"])
            prem.push_back(md_of(x, sig));
    if (name == "Structural")
        return MDerivation{HRule::Id, app_of(field(j, "structural")), std::move(s), {}, std::move(prem)};
    const Json params = j.contains("params") ? j["params"] : Json::object();
    MParams p{params.contains("path") ? path_of(params["path"]) : Path{}, int_or(params, "k", 0)};
    return MDerivation{hrule_of(name), std::nullopt, std::move(s), std::move(p), std::move(prem)};
}

// Text and LaTeX

void text_rec(std::string& out, const std::string& label, const std::string& seq, int depth) {
    out.append(static_cast<std::size_t>(2 * depth), ' ');
    out += seq + "   [" + label + "]\n";
}

void hd_text(std::string& out, const HDerivation& d, int depth) {
    text_rec(out, std::string(hrule_name(d.rule)), d.conclusion.str(), depth);
    for (const auto& p : d.premises)
        hd_text(out, p, depth + 1);
}

void md_text(std::string& out, const MDerivation& d, int depth) {
    std::string label = d.rule_name();
    if (d.structural && !d.structural->at.empty())
        label += " at " + path_str(d.structural->at);
    text_rec(out, label, d.conclusion.str(), depth);
    for (const auto& p : d.premises)
        md_text(out, p, depth + 1);
}

std::string latex_rule(const std::string& name) {
    std::string s;
    for (char c : name)
        s += c == '_' ? std::string("\\_") : std::string(1, c);
    return s;
}

void latex_rec(std::string& out, const std::string& label, const std::string& seq, std::size_t arity) {
    static const char* const kInf[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC"};
    if (arity == 0)
        out += "\\AxiomC{}\n";
    out += "\\RightLabel{\\scriptsize " + latex_rule(label) + "}\n";
    out += std::string(kInf[arity]) + "{$" + latex_of(seq) + "$}\n";
}

void hd_latex(std::string& out, const HDerivation& d) {
    for (const auto& p : d.premises)
        hd_latex(out, p);
    latex_rec(out, std::string(hrule_name(d.rule)), d.conclusion.str(), d.premises.size());
}

void md_latex(std::string& out, const MDerivation& d) {
    for (const auto& p : d.premises)
        md_latex(out, p);
    latex_rec(out, d.rule_name(), d.conclusion.str(), d.premises.size());
}

std::string wrap_proof(const std::string& body) {
    return "\\begin{prooftree}\n" + body + "\\end{prooftree}\n";
}

}  // namespace

std::string to_json(const HDerivation& d, int indent) {
    return hd_json(d).dump(indent);
}

std::string to_json(const MDerivation& d, int indent) {
    return md_json(d).dump(indent);
}

std::string to_json(const RewriteTrace& t, int indent) {
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json rec = app_json(s.app);
        rec["result"] = s.result.str();
        steps.push_back(rec);
    }
    return Json{{"start", t.start.str()}, {"steps", steps}}.dump(indent);
}

HDerivation hd_from_json(std::string_view text, const Signature& sig) {
    return hd_of(parse_json(text), sig);
}

MDerivation md_from_json(std::string_view text, const Signature& sig) {
    return md_of(parse_json(text), sig);
}

RewriteTrace trace_from_json(std::string_view text, const Signature& sig) {
    const Json j = parse_json(text);
    RewriteTrace t(parse_term(str_field(j, "start"), sig));
    if (j.contains("steps"))
        for (const auto& s : j["steps"]) {
            const Term& r = t.push(app_of(s));
            if (s.contains("result") && r != parse_term(str_field(s, "result"), sig))
                throw RuleError("recorded result " + str_field(s, "result") + " differs from " + r.str());
        }
    return t;
}

std::string to_latex(const HDerivation& d) {
    std::string body;
    hd_latex(body, d);
    return wrap_proof(body);
}

std::string to_latex(const MDerivation& d) {
    std::string body;
    md_latex(body, d);
    return wrap_proof(body);
}

std::string to_text(const HDerivation& d) {
    std::string out;
    hd_text(out, d, 0);
    return out;
}

std::string to_text(const MDerivation& d) {
    std::string out;
    md_text(out, d, 0);
    return out;
}

std::string to_text(const RewriteTrace& t) {
    std::string out = t.start.str() + "\n";
    for (const auto& s : t.steps) {
        out += "  " + std::string(rule_name(s.app.rule));
        if (!s.app.at.empty())
            out += " at " + path_str(s.app.at);
        for (const auto& [k, v] : s.app.params)
            out += " " + k + "=" + std::to_string(v);
        out += "\n    " + s.result.str() + "\n";
    }
    return out;
}

std::string latex_of(std::string_view s) {
    std::string out;
    auto digits = [&](std::size_t& i) {
        std::string d;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            d += s[i++];
        return d;
    };
    auto starts = [&](std::size_t i, std::string_view w) { return s.substr(i, w.size()) == w; };
    // Control words need a space unless one follows anyway.
    auto word = [&](const char* cmd, std::size_t next) {
        out += cmd;
        if (next < s.size() && s[next] != ' ')
            out += ' ';
    };
    for (std::size_t i = 0; i < s.size();) {
        const char c = s[i];
        if (starts(i, "=>")) {
            word("\\Rightarrow", i + 2);
            i += 2;
        } else if (starts(i, "->")) {
            word("\\longrightarrow", i + 2);
            i += 2;
        } else if (starts(i, "II")) {
            out += "\\mathbb{I}";
            i += 2;
        } else if (starts(i, "JJ")) {
            out += "\\mathbb{J}";
            i += 2;
        } else if (starts(i, "Lambda")) {
            word("\\Lambda", i + 6);
            i += 6;
        } else if (starts(i, "[]")) {
            out += "[\\,]";
            i += 2;
        } else if (std::isdigit(static_cast<unsigned char>(c)) &&
                   (i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1])))) {
            std::size_t j = i;
            const std::string d = digits(j);
            if (j < s.size() && s[j] == ':') {
                out += "{}^{" + d + "}";
                i = j + 1;
            } else {
                out += d;
                i = j;
            }
        } else if (c == '^' || c == '!' || c == '@' || c == '+') {
            static const std::map<char, std::string> ops{
                {'^', "\\uparrow"}, {'!', "\\downarrow"}, {'@', "\\odot"}, {'+', "\\circ"}};
            ++i;
            const std::string d = digits(i);
            out += ops.at(c) + (d.empty() ? std::string(" ") : "_{" + d + "}");
        } else if (c == '\\') {
            word("\\backslash", i + 1);
            ++i;
        } else if (c == '.') {
            word("\\bullet", i + 1);
            ++i;
        } else if (c == '_') {
            out += "\\_";
            ++i;
        } else if (c == '{' || c == '}') {
            out += std::string("\\") + c;
            ++i;
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

}  // namespace dcalc
