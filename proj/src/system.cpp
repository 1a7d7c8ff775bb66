#include "rmcfair/system.hpp"

#include "parse_util.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace rmcfair {

namespace {

using detail::expand_macros;
using detail::parse_field_value;
using detail::spec_lexer;

std::string render(const nfa& machine, const word& w) { return format_word(w, machine.alpha()); }

void check_inclusion(std::vector<validation_issue>& issues, const nfa& sub, const nfa& super,
                     const std::string& rule, const std::string& detail) {
    if (auto w = includes(sub, super))
        issues.push_back({rule, detail, render(sub, *w)});
}

} // namespace

system_spec parse_system(const std::string& text) {
    spec_lexer lx{text};
    if (lx.ident() != "system") lx.fail("expected 'system'");
    std::string name = lx.name_token();
    lx.expect('{');

    alphabet sigma;
    bool saw_alphabet = false;
    std::map<std::string, std::string> macros;
    std::optional<nfa> v1, v2, init, final_cfg, p1, p2, fair;

    auto pair_alpha = [&] { return tuple_alphabet({sigma, sigma}); };
    auto fair_alpha = [&] { return tuple_alphabet({sigma, gamma_alphabet()}); };
    auto need_alphabet = [&] {
        if (!saw_alphabet) lx.fail("the alphabet must be declared before other fields");
    };

    while (!lx.try_consume('}')) {
        if (lx.peek() == '\0') lx.fail("unterminated system block");
        if (lx.keyword_ahead("alphabet")) {
            lx.ident();
            if (saw_alphabet) lx.fail("duplicate alphabet declaration");
            saw_alphabet = true;
            do {
                std::string sym = lx.ident();
                if (sym[0] == '#' && sym != "#1" && sym != "#0")
                    lx.fail("symbol '" + sym + "' uses the reserved '#' namespace (only the "
                            "counter symbols #1 and #0 may be declared)");
                if (sigma.contains(sym)) lx.fail("duplicate alphabet symbol '" + sym + "'");
                sigma.intern(sym);
            } while (lx.try_consume(','));
            lx.expect(';');
            continue;
        }
        if (lx.keyword_ahead("let")) {
            lx.ident();
            need_alphabet();
            std::string mname = lx.ident();
            if (mname.find('/') != std::string::npos || mname.find('#') != std::string::npos)
                lx.fail("macro name '" + mname + "' may not contain '/' or '#'");
            if (sigma.contains(mname))
                lx.fail("macro name '" + mname + "' collides with an alphabet symbol");
            if (macros.count(mname)) lx.fail("duplicate macro '" + mname + "'");
            lx.expect('=');
            std::string body = lx.until_semicolon();
            lx.expect(';');
            macros[mname] = expand_macros(body, macros);
            continue;
        }
        std::string field = lx.ident();
        need_alphabet();
        lx.expect('=');
        auto assign = [&](std::optional<nfa>& slot, const alphabet& fa) {
            if (slot) lx.fail("duplicate field '" + field + "'");
            slot = parse_field_value(lx, fa, macros);
        };
        if (field == "v1") assign(v1, sigma);
        else if (field == "v2") assign(v2, sigma);
        else if (field == "init") assign(init, sigma);
        else if (field == "final") assign(final_cfg, sigma);
        else if (field == "p1") assign(p1, pair_alpha());
        else if (field == "p2") assign(p2, pair_alpha());
        else if (field == "fair") assign(fair, fair_alpha());
        else lx.fail("unknown field '" + field + "'");
    }

    std::string missing;
    auto require = [&](const std::optional<nfa>& slot, const char* what) {
        if (!slot) missing += missing.empty() ? what : (std::string(", ") + what);
    };
    if (!saw_alphabet) missing = "alphabet";
    require(v1, "v1");
    require(v2, "v2");
    require(init, "init");
    require(final_cfg, "final");
    require(p1, "p1");
    require(p2, "p2");
    if (!missing.empty()) throw parse_error("missing field(s): " + missing, lx.line, lx.col);

    std::optional<relation> fair_rel;
    if (fair) fair_rel = relation({sigma, gamma_alphabet()}, std::move(*fair));
    return system_spec{std::move(name),
                       sigma,
                       std::move(*v1),
                       std::move(*v2),
                       std::move(*init),
                       std::move(*final_cfg),
                       relation({sigma, sigma}, std::move(*p1)),
                       relation({sigma, sigma}, std::move(*p2)),
                       std::move(fair_rel)};
}

std::string print_system(const system_spec& s) {
    std::ostringstream os;
    os << "system " << s.name << " {\n  alphabet ";
    for (std::size_t i = 0; i < s.sigma.size(); ++i) {
        if (i) os << ", ";
        os << s.sigma.name_of(static_cast<symbol_id>(i));
    }
    os << ";\n\n";
    auto field = [&](const char* fname, const nfa& machine) {
        std::string block = print_automaton_block(trim(machine), "");
        while (!block.empty() && std::isspace(static_cast<unsigned char>(block.back())))
            block.pop_back();
        os << "  " << fname << " = " << block << ";\n";
    };
    field("v1", s.v1);
    field("v2", s.v2);
    field("init", s.init);
    field("final", s.final_cfg);
    field("p1", s.p1.carrier());
    field("p2", s.p2.carrier());
    if (s.fair) field("fair", s.fair->carrier());
    os << "}\n";
    return os.str();
}

std::vector<validation_issue> validate(const system_spec& s) {
    std::vector<validation_issue> issues;

    check_inclusion(issues, s.init, s.v1, "init-in-v1",
                    "an initial configuration is not scheduler-owned");
    check_inclusion(issues, s.final_cfg, s.v1, "final-in-v1",
                    "a goal configuration is not scheduler-owned");

    if (auto w = is_empty_witness(product_and(s.v1, s.v2)))
        issues.push_back({"players-disjoint", "a configuration is owned by both players",
                          render(s.v1, *w)});

    nfa p1_dom = trim(project(s.p1, {0}).carrier());
    nfa p1_rng = trim(project(s.p1, {1}).carrier());
    nfa p2_dom = trim(project(s.p2, {0}).carrier());
    nfa p2_rng = trim(project(s.p2, {1}).carrier());

    check_inclusion(issues, p1_dom, s.v1, "p1-from-v1",
                    "a scheduler move starts outside v1");
    check_inclusion(issues, p1_rng, s.v2, "p1-into-v2",
                    "a scheduler move does not land in v2");
    check_inclusion(issues, p2_dom, s.v2, "p2-from-v2",
                    "a probabilistic move starts outside v2");
    check_inclusion(issues, p2_rng, s.v1, "p2-into-v1",
                    "a probabilistic move does not land back in v1");

    nfa non_goal_v1 = product_and(s.v1, complement(s.final_cfg));
    nfa non_goal_v2 = product_and(s.v2, complement(s.final_cfg));
    check_inclusion(issues, non_goal_v1, p1_dom, "v1-not-stuck",
                    "a non-goal scheduler configuration has no move");
    check_inclusion(issues, non_goal_v2, p2_dom, "v2-not-stuck",
                    "a non-goal probabilistic configuration has no move");

    if (s.fair) {
        nfa fair_dom = trim(project(*s.fair, {0}).carrier());
        check_inclusion(issues, product_or(s.v1, s.v2), fair_dom, "fair-total",
                        "a configuration has no fairness annotation");
    }
    return issues;
}

} // namespace rmcfair
