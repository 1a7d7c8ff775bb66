// Command-line front end wiring the toolkit together: validate and encode
// system files, check and synthesize termination proofs, run the explicit
// oracle, and export the shipped benchmark corpus.
//
// Exit codes, exactly one per invocation:
//   0  holds / proved / ok
//   1  refuted or a condition failed (witness printed)
//   2  unknown: a budget ran out (search deadline, oracle state bound)
//   3  input error (bad file, bad flags, malformed spec or proof)
#include "rmcfair/benchmarks.hpp"
#include "rmcfair/encoder.hpp"
#include "rmcfair/oracle.hpp"
#include "rmcfair/proof.hpp"
#include "rmcfair/search.hpp"
#include "rmcfair/system.hpp"

#include "parse_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rmcfair;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_unknown = 2;
constexpr int exit_input = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// All writes go through a temp file and a rename, so a crash or a concurrent
// reader never sees a half-written artifact.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.good()) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

// parse_error::what() already carries the line:column position.
system_spec load_spec(const std::string& path) {
    try {
        return parse_system(read_file(path));
    } catch (const parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

// The system a proof file declares itself for, without committing to an
// alphabet yet.
std::string proof_target(const std::string& text) {
    detail::spec_lexer lx{text};
    if (lx.ident() != "proof" || lx.ident() != "for") lx.fail("expected 'proof for <name>'");
    return lx.name_token();
}

void export_dot(const system_spec& spec, const fs::path& dir) {
    fs::create_directories(dir);
    auto emit = [&](const std::string& field, const nfa& machine) {
        fs::path p = dir / (spec.name + "-" + field + ".dot");
        write_file_atomic(p, to_dot(machine, spec.name + "-" + field));
        std::cout << "wrote " << p.string() << "\n";
    };
    emit("v1", spec.v1);
    emit("v2", spec.v2);
    emit("init", spec.init);
    emit("final", spec.final_cfg);
    emit("p1", spec.p1.carrier());
    emit("p2", spec.p2.carrier());
    if (spec.fair) emit("fair", spec.fair->carrier());
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw std::runtime_error("--n expects comma-separated positive integers, got '" +
                                     item + "'");
        std::size_t n = std::stoul(item);
        if (n == 0) throw std::runtime_error("--n expects positive instance sizes");
        out.push_back(n);
    }
    if (out.empty()) throw std::runtime_error("--n expects at least one instance size");
    return out;
}

// ---- subcommand bodies ----

int run_validate(const std::string& spec_path, const std::string& dot_dir) {
    system_spec spec = load_spec(spec_path);
    std::vector<validation_issue> issues = validate(spec);
    for (const auto& issue : issues) {
        std::cout << "issue " << issue.rule << ": " << issue.detail << "\n";
        if (!issue.witness.empty()) std::cout << "  witness: " << issue.witness << "\n";
    }
    bool annot_ok = true;
    if (spec.fair && issues.empty()) {
        if (auto clash = check_annotator(spec)) {
            annot_ok = false;
            std::cout << "issue annotator-kind-clash: position " << clash->position
                      << " is justice in one run and compassion in another\n"
                      << "  witness: " << format_word(clash->config1, spec.sigma) << " | "
                      << format_word(clash->config2, spec.sigma) << "\n";
        }
    }
    if (!dot_dir.empty()) export_dot(spec, dot_dir);
    if (!issues.empty() || !annot_ok) return exit_refuted;
    std::cout << "ok: " << spec.name << " is well-formed\n";
    if (spec.fair) std::cout << "ok: annotator kinds are consistent\n";
    return exit_ok;
}

int run_encode(const std::string& spec_path, const std::string& emit_path,
               const std::string& dot_dir) {
    system_spec spec = load_spec(spec_path);
    encoded_spec enc = encode_system(spec);
    std::string text = print_system(enc.spec);
    if (!dot_dir.empty()) export_dot(enc.spec, dot_dir);
    if (emit_path.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(emit_path, text);
        std::cout << "wrote " << emit_path << "\n";
    }
    return exit_ok;
}

int run_check_proof(const std::string& spec_path, const std::string& proof_path) {
    system_spec spec = load_spec(spec_path);
    std::string text = read_file(proof_path);
    std::optional<regular_proof> proof;
    try {
        std::string target = proof_target(text);
        // a proof for "<name>-encoded" against the plain file means: encode
        // first, then check against the encoded system
        if (target == spec.name + "-encoded") spec = encode_system(spec).spec;
        else if (target != spec.name)
            throw std::runtime_error("proof declares system '" + target +
                                     "' but the specification is '" + spec.name + "'");
        proof = parse_proof(text, spec.sigma);
    } catch (const parse_error& e) {
        throw std::runtime_error(proof_path + ": " + e.what());
    }

    vc_report rep = check_proof(spec, *proof);
    std::cout << "checking proof for " << spec.name << "\n";
    std::cout << "vc1 (invariant initial and inductive): " << (rep.vc1 ? "pass" : "FAIL") << "\n";
    std::cout << "vc2 (ranking is a strict order): " << (rep.vc2 ? "pass" : "FAIL") << "\n";
    std::cout << "vc3 (scheduler moves answered by rank drop): " << (rep.vc3 ? "pass" : "FAIL")
              << "\n";
    for (const auto& f : rep.failures) {
        std::cout << "witness " << f.condition << ":";
        for (std::size_t i = 0; i < f.words.size(); ++i)
            std::cout << (i ? " | " : " ") << format_word(f.words[i], spec.sigma);
        std::cout << "\n";
    }
    std::cout << "result: " << (rep.ok() ? "accepted" : "rejected") << "\n";
    return rep.ok() ? exit_ok : exit_refuted;
}

struct oracle_line {
    int code;
    std::string text;
};

oracle_line oracle_one(const system_spec& spec, std::size_t n, unsigned kfair, bool compare) {
    std::ostringstream os;
    try {
        if (compare) {
            unsigned k = kfair ? kfair : 2;
            auto mismatch = compare_encodings(spec, n, k);
            os << "n=" << n << " compare k=" << k << ": "
               << (mismatch ? "mismatch: " + *mismatch : "ok") << "\n";
            return {mismatch ? exit_refuted : exit_ok, os.str()};
        }
        explicit_mdp mdp = kfair ? kfair_expand(spec, n, kfair) : expand(spec, n);
        verdict v = as_reach(mdp);
        os << "n=" << n;
        if (kfair) os << " kfair k=" << kfair;
        else os << " plain";
        os << ": " << (v.holds ? "holds" : "fails") << "\n";
        if (!v.holds && v.witness) {
            os << "  avoiding scheduler (" << v.witness->size() << " choices):\n";
            for (const auto& c : *v.witness)
                os << "  from " << format_state(mdp, c.state) << " choose "
                   << format_state(mdp, c.successor) << "\n";
        }
        return {v.holds ? exit_ok : exit_refuted, os.str()};
    } catch (const std::length_error& e) {
        os << "n=" << n << ": state bound exceeded (" << e.what() << ")\n";
        return {exit_unknown, os.str()};
    }
}

int run_oracle(const std::string& spec_path, const std::string& sizes_csv, unsigned kfair,
               bool compare, unsigned jobs) {
    system_spec spec = load_spec(spec_path);
    std::vector<std::size_t> sizes = parse_sizes(sizes_csv);

    std::vector<oracle_line> lines(sizes.size());
    if (jobs > 1 && sizes.size() > 1) {
        std::vector<std::future<oracle_line>> futs;
        futs.reserve(sizes.size());
        for (std::size_t n : sizes)
            futs.push_back(std::async(std::launch::async,
                                      [&, n] { return oracle_one(spec, n, kfair, compare); }));
        for (std::size_t i = 0; i < futs.size(); ++i) lines[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < sizes.size(); ++i)
            lines[i] = oracle_one(spec, sizes[i], kfair, compare);
    }

    int code = exit_ok;
    for (const auto& l : lines) {
        std::cout << l.text;
        code = std::max(code, l.code);
    }
    return code;
}

int run_search(const std::string& spec_path, std::size_t max_inv, std::size_t max_ord,
               double timeout_s, const std::string& emit_path) {
    system_spec spec = load_spec(spec_path);
    search_budget budget;
    budget.max_inv_states = max_inv;
    budget.max_ord_states = max_ord;
    budget.deadline =
        std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
    search_outcome out = search(spec, budget);

    std::ostringstream stats;
    stats << "invariants=" << out.stats.inv_candidates << " pairs=" << out.stats.ord_candidates
          << " screened=" << out.stats.cache_rejections << " checked=" << out.stats.full_checks
          << (out.stats.deadline_hit ? " deadline=hit" : "");
    if (out.status != search_status::proved) {
        std::cout << "unknown: budget exhausted (" << stats.str() << ")\n";
        return exit_unknown;
    }
    std::cout << "proved (" << stats.str() << ")\n";
    std::string text = print_proof(*out.proof);
    std::cout << text;
    if (!emit_path.empty()) {
        write_file_atomic(emit_path, text);
        std::cout << "wrote " << emit_path << "\n";
    }
    return exit_ok;
}

int run_benchmarks(const std::string& export_dir) {
    if (export_dir.empty()) {
        for (const std::string& name : benchmark_names()) std::cout << name << "\n";
        return exit_ok;
    }
    fs::create_directories(export_dir);
    for (const std::string& name : benchmark_names()) {
        fs::path p = fs::path(export_dir) / (name + ".spec");
        write_file_atomic(p, benchmark_text(name));
        std::cout << "wrote " << p.string() << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "regular model checking with finitary fairness: encode fairness into\n"
        "counter systems, check and search for termination proofs, and cross-\n"
        "validate against an explicit-state oracle.\n"
        "exit codes: 0 holds/proved/ok, 1 refuted (witness printed),\n"
        "            2 unknown (budget), 3 input error",
        "rmcfair"};
    app.require_subcommand(1);

    std::string spec_path, proof_path, emit_path, dot_dir, export_dir, sizes = "2,3";
    unsigned kfair = 0, jobs = 1;
    bool compare = false;
    std::size_t max_inv = 2, max_ord = 2;
    double timeout_s = 60.0;

    CLI::App* c_validate =
        app.add_subcommand("validate", "structural checks on a system file");
    c_validate->add_option("spec", spec_path, "system file")->required();
    c_validate->add_option("--dot", dot_dir, "write DOT renderings of the machines here");

    CLI::App* c_encode = app.add_subcommand(
        "encode", "splice fairness counters into an annotated system");
    c_encode->add_option("spec", spec_path, "system file with a fair field")->required();
    c_encode->add_option("--emit", emit_path, "write the encoded system here");
    c_encode->add_option("--dot", dot_dir, "write DOT renderings of the encoded machines here");

    CLI::App* c_check = app.add_subcommand(
        "check-proof", "check a termination proof against a system");
    c_check->add_option("spec", spec_path, "system file")->required();
    c_check->add_option("proof", proof_path,
                        "proof file; a proof for '<name>-encoded' encodes the system first")
        ->required();

    CLI::App* c_oracle = app.add_subcommand(
        "oracle", "explicit-state verdicts at fixed instance sizes");
    c_oracle->add_option("spec", spec_path, "system file")->required();
    c_oracle->add_option("--n", sizes, "comma-separated instance sizes (default 2,3)");
    c_oracle->add_option("--kfair", kfair, "bounded-fairness counter ceiling k");
    c_oracle->add_flag("--compare", compare,
                       "compare the counter encoding against the explicit expansion "
                       "(uses --kfair, default 2)");
    c_oracle->add_option("--jobs", jobs, "run instance sizes in parallel");

    CLI::App* c_search =
        app.add_subcommand("search", "synthesize a termination proof within budgets");
    c_search->add_option("spec", spec_path, "system file")->required();
    c_search->add_option("--max-inv", max_inv, "invariant state bound (default 2)");
    c_search->add_option("--max-ord", max_ord, "ranking state bound (default 2)");
    c_search->add_option("--timeout", timeout_s, "wall-clock budget in seconds (default 60)");
    c_search->add_option("--emit", emit_path, "write a found proof here");
    c_search->add_option("--jobs", jobs,
                         "reserved; candidates are swept in canonical order regardless");

    CLI::App* c_bench =
        app.add_subcommand("benchmarks", "list or export the shipped corpus");
    c_bench->add_option("--export", export_dir, "write each benchmark as <name>.spec here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (app.got_subcommand(c_validate)) return run_validate(spec_path, dot_dir);
        if (app.got_subcommand(c_encode)) return run_encode(spec_path, emit_path, dot_dir);
        if (app.got_subcommand(c_check)) return run_check_proof(spec_path, proof_path);
        if (app.got_subcommand(c_oracle))
            return run_oracle(spec_path, sizes, kfair, compare, jobs);
        if (app.got_subcommand(c_search))
            return run_search(spec_path, max_inv, max_ord, timeout_s, emit_path);
        if (app.got_subcommand(c_bench)) return run_benchmarks(export_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
