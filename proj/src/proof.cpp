#include "rmcfair/proof.hpp"

#include "parse_util.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rmcfair {

namespace {

// The checks never trust upstream validation: a proof parsed against the
// wrong system would otherwise fail with opaque automaton errors deep in the
// algebra, so compatibility is re-asserted here where the message can say
// what actually went wrong.
void require_compatible(const system_spec& spec, const regular_proof& proof) {
    if (proof.inv.alpha() != spec.sigma)
        throw std::invalid_argument("proof invariant alphabet does not match the system's");
    if (proof.ord.tracks() != 2 || proof.ord.track_alphabet(0) != spec.sigma ||
        proof.ord.track_alphabet(1) != spec.sigma)
        throw std::invalid_argument(
            "proof order is not a binary relation over the system alphabet");
}

std::vector<word> unzip_pair(const relation& r, const word& w) {
    return unzip_tuple(r.carrier().alpha(), r.track_alphabets(), w);
}

} // namespace

std::vector<vc_failure> check_vc1(const system_spec& spec, const regular_proof& proof) {
    require_compatible(spec, proof);
    std::vector<vc_failure> out;
    if (auto w = includes(spec.init, proof.inv)) out.push_back({"vc1-init", {*w}});
    nfa stepped = post_image(unite(spec.p1, spec.p2), proof.inv);
    if (auto w = includes(stepped, proof.inv)) out.push_back({"vc1-post", {*w}});
    return out;
}

std::vector<vc_failure> check_vc2(const regular_proof& proof) {
    if (proof.ord.tracks() != 2 || proof.ord.track_alphabet(0) != proof.ord.track_alphabet(1) ||
        proof.ord.track_alphabet(0) != proof.inv.alpha())
        throw std::invalid_argument(
            "proof order is not a binary relation over the invariant's alphabet");
    std::vector<vc_failure> out;
    relation self = intersect(proof.ord, identity_relation(proof.ord.track_alphabet(0)));
    if (auto w = is_empty_witness(self.carrier()))
        out.push_back({"vc2-irreflexive", {unzip_pair(self, *w)[0]}});
    relation twice = compose(proof.ord, proof.ord);
    if (auto w = includes(twice.carrier(), proof.ord.carrier())) {
        auto parts = unzip_pair(twice, *w);
        out.push_back({"vc2-transitive", {parts[0], parts[1]}});
    }
    return out;
}

std::vector<vc_failure> check_vc3(const system_spec& spec, const regular_proof& proof) {
    require_compatible(spec, proof);
    const alphabet& sig = spec.sigma;
    const std::vector<alphabet> two{sig, sig}, three{sig, sig, sig};

    nfa live = complement(spec.final_cfg);
    nfa inv_live = product_and(proof.inv, live);
    // Demands: scheduler moves from a non-goal invariant configuration to a
    // non-goal target. Tracks are (x, y).
    relation lhs = intersect(spec.p1, intersect(cylindrify(as_relation(inv_live), two, {0}),
                                                cylindrify(as_relation(live), two, {1})));
    // Answers: over tracks (x, y, z), the probabilistic move y -> z lands in
    // inv and drops the rank below x; z is then projected away.
    relation answered =
        intersect(cylindrify(spec.p2, three, {1, 2}),
                  intersect(cylindrify(as_relation(proof.inv), three, {2}),
                            cylindrify(proof.ord, three, {0, 2})));
    relation rhs = project(answered, {0, 1});
    if (auto w = includes(lhs.carrier(), rhs.carrier())) {
        auto parts = unzip_pair(lhs, *w);
        return {{"vc3", {parts[0], parts[1]}}};
    }
    return {};
}

vc_report check_proof(const system_spec& spec, const regular_proof& proof) {
    vc_report report;
    auto add = [&](bool& flag, std::vector<vc_failure> failures) {
        flag = failures.empty();
        for (auto& f : failures) report.failures.push_back(std::move(f));
    };
    add(report.vc1, check_vc1(spec, proof));
    add(report.vc2, check_vc2(proof));
    add(report.vc3, check_vc3(spec, proof));
    return report;
}

regular_proof parse_proof(const std::string& text, const alphabet& sigma) {
    detail::spec_lexer lx{text};
    if (lx.ident() != "proof") lx.fail("expected 'proof'");
    if (lx.ident() != "for") lx.fail("expected 'for'");
    std::string name = lx.name_token();
    lx.expect('{');

    const alphabet pair_alpha = tuple_alphabet({sigma, sigma});
    std::map<std::string, std::string> macros;
    std::optional<nfa> inv, ord;

    while (!lx.try_consume('}')) {
        if (lx.peek() == '\0') lx.fail("unterminated proof block");
        if (lx.keyword_ahead("let")) {
            lx.ident();
            std::string mname = lx.ident();
            if (mname.find('/') != std::string::npos || mname.find('#') != std::string::npos)
                lx.fail("macro name '" + mname + "' may not contain '/' or '#'");
            if (sigma.contains(mname))
                lx.fail("macro name '" + mname + "' collides with an alphabet symbol");
            if (macros.count(mname)) lx.fail("duplicate macro '" + mname + "'");
            lx.expect('=');
            std::string body = lx.until_semicolon();
            lx.expect(';');
            macros[mname] = detail::expand_macros(body, macros);
            continue;
        }
        std::string field = lx.ident();
        lx.expect('=');
        auto assign = [&](std::optional<nfa>& slot, const alphabet& fa) {
            if (slot) lx.fail("duplicate field '" + field + "'");
            slot = detail::parse_field_value(lx, fa, macros);
        };
        if (field == "inv") assign(inv, sigma);
        else if (field == "ord") assign(ord, pair_alpha);
        else lx.fail("unknown field '" + field + "'");
    }

    std::string missing;
    if (!inv) missing = "inv";
    if (!ord) missing += missing.empty() ? "ord" : std::string(", ord");
    if (!missing.empty()) throw parse_error("missing field(s): " + missing, lx.line, lx.col);

    return regular_proof{std::move(name), std::move(*inv),
                         relation({sigma, sigma}, std::move(*ord))};
}

std::string print_proof(const regular_proof& proof) {
    std::ostringstream os;
    os << "proof for " << proof.system << " {\n";
    auto field = [&](const char* fname, const nfa& machine) {
        std::string block = print_automaton_block(trim(machine), "");
        while (!block.empty() && std::isspace(static_cast<unsigned char>(block.back())))
            block.pop_back();
        os << "  " << fname << " = " << block << ";\n";
    };
    field("inv", proof.inv);
    field("ord", proof.ord.carrier());
    os << "}\n";
    return os.str();
}

} // namespace rmcfair
