// Command-line front end: proof search, checking, structural-term utilities
// and a lexicon-driven sentence parser.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dcalc/bridge.hpp"
#include "dcalc/serialize.hpp"

using namespace dcalc;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kNo = 1, kInput = 2, kExtract = 3 };

struct Options {
    std::string sig_file;
    std::string out = "text";
    int limit = 16;
    int budget = kDefaultBudget;
    std::uint64_t seed = 1;
};

class InputError : public Error {
  public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Signature load_sig(const Options& o) {
    return o.sig_file.empty() ? Signature{} : Signature::parse(read_file(o.sig_file));
}

Path parse_path(const std::string& s) {
    Path p;
    for (char c : s) {
        if (c == '0')
            p.push_back(Dir::Left);
        else if (c == '1')
            p.push_back(Dir::Right);
        else if (c != ',' && c != ' ' && c != '[' && c != ']')
            throw InputError("path steps must be 0 or 1: " + s);
    }
    return p;
}

template <class D>
void emit(const D& d, const Options& o) {
    if (o.out == "json")
        std::cout << to_json(d) << "\n";
    else if (o.out == "latex")
        std::cout << to_latex(d);
    else
        std::cout << to_text(d);
}

void emit_trace(const RewriteTrace& t, const Options& o) {
    if (o.out == "json")
        std::cout << to_json(t) << "\n";
    else
        std::cout << to_text(t);
}

template <class D>
void emit_many(const std::vector<D>& ds, const Options& o) {
    if (o.out == "json") {
        Json arr = Json::array();
        for (const auto& d : ds)
            arr.push_back(Json::parse(to_json(d)));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (o.out == "text")
            std::cout << "# proof " << i + 1 << "\n";
        emit(ds[i], o);
    }
}

int cmd_prove(const std::string& calculus, const std::string& text, bool all, const Options& o) {
    const Signature sig = load_sig(o);
    if (calculus == "hd") {
        const HSequent s = parse_hsequent(text, sig);
        if (all) {
            const auto ds = prove_all(s, o.limit);
            emit_many(ds, o);
            return ds.empty() ? kNo : kOk;
        }
        const auto d = prove(s);
        if (!d)
            return kNo;
        emit(*d, o);
        return kOk;
    }
    const MSequent s = parse_msequent(text, sig);
    const auto d = prove_m(s, LiftOptions{o.budget});
    if (!d)
        return kNo;
    emit(*d, o);
    return kOk;
}

int cmd_check(const std::string& calculus, const std::string& file, const Options& o) {
    const Signature sig = load_sig(o);
    const std::string text = read_file(file);
    const auto v = calculus == "hd" ? check(hd_from_json(text, sig)) : check_m(md_from_json(text, sig));
    if (v) {
        std::cout << "violation: " << v->str() << "\n";
        return kNo;
    }
    std::cout << "ok\n";
    return kOk;
}

// Lexicon: signature lines, a line `%%`, then `word<TAB>type` lines.
struct Lexicon {
    Signature sig;
    std::map<std::string, std::vector<Type>> entries;
};

Lexicon load_lexicon(const std::string& path) {
    const std::string text = read_file(path);
    const auto split = text.find("\n%%");
    if (text.rfind("%%", 0) != 0 && split == std::string::npos)
        throw InputError("lexicon needs a '%%' line between signature and entries");
    const std::size_t head_end = text.rfind("%%", 0) == 0 ? 0 : split + 1;
    Lexicon lex;
    lex.sig = Signature::parse(text.substr(0, head_end));
    std::istringstream body(text.substr(text.find('\n', head_end) == std::string::npos ? text.size()
                                                                                        : text.find('\n', head_end) + 1));
    std::string line;
    while (std::getline(body, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("lexicon entry without a tab: " + line);
        lex.entries[line.substr(0, tab)].push_back(parse_type(line.substr(tab + 1), lex.sig));
    }
    return lex;
}

int cmd_parse(const std::string& lexicon, const std::string& sentence, const std::string& config,
              const std::string& target, const Options& o) {
    const Lexicon lex = load_lexicon(lexicon);
    const Type goal = parse_type(target, lex.sig);

    std::vector<HyperConfig> antecedents;
    std::vector<std::string> labels;
    if (!config.empty()) {
        antecedents.push_back(parse_config(config, lex.sig));
        labels.push_back(antecedents.back().str());
    } else {
        std::vector<std::string> words;
        std::istringstream ws(sentence);
        for (std::string w; ws >> w;)
            words.push_back(w);
        std::vector<const std::vector<Type>*> choices;
        for (const auto& w : words) {
            auto it = lex.entries.find(w);
            if (it == lex.entries.end())
                throw InputError("unknown word: " + w);
            choices.push_back(&it->second);
        }
        std::vector<std::size_t> pick(words.size(), 0);
        while (true) {
            HyperConfig ant;
            std::string label;
            for (std::size_t i = 0; i < words.size(); ++i) {
                const Type& t = (*choices[i])[pick[i]];
                ant = ant + figure(t);
                label += (i ? " " : "") + words[i] + ":" + t.str();
            }
            antecedents.push_back(std::move(ant));
            labels.push_back(label);
            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < choices[i]->size())
                    break;
                pick[i] = 0;
            }
            if (i == pick.size())
                break;
        }
    }

    Json readings = Json::array();
    int count = 0;
    std::ostringstream text;
    for (std::size_t a = 0; a < antecedents.size(); ++a) {
        if (antecedents[a].sort() != goal.sort())
            continue;
        const HSequent s{antecedents[a], goal};
        for (const auto& d : prove_all(s, o.limit)) {
            ++count;
            if (o.out == "json")
                readings.push_back(Json{{"assignment", labels[a]}, {"derivation", Json::parse(to_json(d))}});
            else
                text << "# reading " << count << ": " << labels[a] << "\n"
                     << (o.out == "latex" ? to_latex(d) : to_text(d));
        }
    }
    if (o.out == "json")
        std::cout << Json{{"readings", count}, {"derivations", readings}}.dump(2) << "\n";
    else
        std::cout << count << (count == 1 ? " reading\n" : " readings\n") << text.str();
    return count ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypersequent and multimodal prover for the displacement calculus"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--sig", o.sig_file, "signature file (name<TAB>sort per line)");
    app.add_option("--out", o.out, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
    app.add_option("--limit", o.limit, "proof cap for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--budget", o.budget, "normalization step budget")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for randomized checks");

    std::string calculus, input, input2, file, at, lexicon, sentence, config, target;
    bool all = false, unique = false;

    auto* prove_cmd = app.add_subcommand("prove", "search for a proof");
    prove_cmd->add_option("calculus", calculus)->required()->check(CLI::IsMember({"hd", "md"}));
    prove_cmd->add_option("sequent", input)->required();
    prove_cmd->add_flag("--all", all, "enumerate up to --limit cut-free proofs (hd)");

    auto* check_cmd = app.add_subcommand("check", "check a derivation file");
    check_cmd->add_option("calculus", calculus)->required()->check(CLI::IsMember({"hd", "md"}));
    check_cmd->add_option("file", file)->required();

    auto* sharp_cmd = app.add_subcommand("sharp", "translate a structural term to a hyperconfiguration");
    sharp_cmd->add_option("term", input)->required();
    auto* termof_cmd = app.add_subcommand("termof", "canonical structural term of a hyperconfiguration");
    termof_cmd->add_option("config", input)->required();
    auto* equiv_cmd = app.add_subcommand("equiv", "decide structural equivalence");
    equiv_cmd->add_option("term", input)->required();
    equiv_cmd->add_option("other", input2)->required();
    auto* extract_cmd = app.add_subcommand("extract", "extract a leaf occurrence as T' +i A");
    extract_cmd->add_option("term", input)->required();
    extract_cmd->add_option("--at", at, "leaf path, e.g. 1,0");
    extract_cmd->add_flag("--check-unique", unique, "cross-check on randomly rewritten variants");
    auto* normalize_cmd = app.add_subcommand("normalize", "rewrite to the canonical term");
    normalize_cmd->add_option("term", input)->required();

    auto* parse_cmd = app.add_subcommand("parse", "parse a sentence with a lexicon");
    parse_cmd->add_option("lexicon", lexicon)->required();
    parse_cmd->add_option("target", target)->required();
    parse_cmd->add_option("sentence", sentence, "space-separated words (may be empty)");
    parse_cmd->add_option("--config", config, "explicit antecedent instead of a sentence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*prove_cmd)
            return cmd_prove(calculus, input, all, o);
        if (*check_cmd)
            return cmd_check(calculus, file, o);
        if (*parse_cmd)
            return cmd_parse(lexicon, sentence, config, target, o);

        const Signature sig = load_sig(o);
        if (*sharp_cmd) {
            std::cout << sharp(parse_term(input, sig)).str() << "\n";
            return kOk;
        }
        if (*termof_cmd) {
            std::cout << term_of_config(parse_config(input, sig)).str() << "\n";
            return kOk;
        }
        if (*equiv_cmd) {
            const bool e = equiv(parse_term(input, sig), parse_term(input2, sig));
            std::cout << (e ? "true" : "false") << "\n";
            return e ? kOk : kNo;
        }
        if (*normalize_cmd) {
            emit_trace(normalize(parse_term(input, sig), o.budget), o);
            return kOk;
        }
        if (*extract_cmd) {
            const Term t = parse_term(input, sig);
            const Path p = parse_path(at);
            const Extraction e = extract(t, p, ExtractOptions{true, o.budget});
            if (o.out == "json") {
                Json j{{"index", e.index}, {"rest", e.rest.str()}, {"trace", Json::parse(to_json(e.trace))}};
                if (unique)
                    j["unique"] = uniqueness_check(t, p, 5, o.seed);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "index " << e.index << "\nrest " << e.rest.str() << "\n";
                if (unique)
                    std::cout << "unique " << (uniqueness_check(t, p, 5, o.seed) ? "true" : "false") << "\n";
                emit_trace(e.trace, o);
            }
            return kOk;
        }
    } catch (const ExtractError& e) {
        std::cerr << "extract: " << e.what() << "\n";
        return kExtract;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInput;
    } catch (const SortError& e) {
        std::cerr << "sort error: " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kNo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
