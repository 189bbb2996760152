// subreg — command-line front end for the subregular transducer toolkit.
//
// Exit status: 0 on success and positive verdicts, 1 on negative verdicts
// (non-member, non-equivalent, no tier found), 2 on usage, parse, and domain
// errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "subreg/builtins.hpp"
#include "subreg/classes.hpp"
#include "subreg/decompose.hpp"
#include "subreg/sfst.hpp"
#include "subreg/views.hpp"

namespace {

using namespace subreg;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::ParseError, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        raise(ErrorCode::ParseError, "cannot write '" + path + "'");
    }
    out << content;
}

/// Shared machine-selection flags: a positional path (or `-` for stdin) or a
/// bundled machine via --builtin.
struct MachineArgs {
    std::string path;
    std::string builtin_name;

    void attach(CLI::App* cmd) {
        cmd->add_option("machine", path, "machine file (- for stdin)");
        cmd->add_option("--builtin", builtin_name, "use a bundled machine")
            ->check(CLI::IsMember(builtin_names()));
    }

    Sfst load() const {
        if (!builtin_name.empty()) {
            if (!path.empty()) {
                raise(ErrorCode::ParseError, "give either a machine file or --builtin, not both");
            }
            return builtin(builtin_name);
        }
        if (path.empty()) {
            raise(ErrorCode::ParseError, "no machine given (file path or --builtin)");
        }
        return parse_sfst(read_file(path));
    }

    /// With --builtin, a lone positional belongs to the next argument (the
    /// input word), not to the machine slot.
    void shift_word_into(std::string& word, bool& have_word) {
        if (!builtin_name.empty() && !have_word && !path.empty()) {
            word = path;
            path.clear();
            have_word = true;
        }
    }
};

/// Tier selection: --tier takes comma-separated on-tier tokens, the word ALL
/// (everything on) or NONE (everything off); --tier-file reads one token per
/// line. The alphabet the tier lives over comes from the checked object.
struct TierArgs {
    std::string spec;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tier", spec, "comma-separated on-tier symbols, or ALL / NONE");
        cmd->add_option("--tier-file", file, "file with one on-tier symbol per line");
    }

    Tier resolve(const std::set<Symbol>& alphabet) const {
        if (!file.empty()) {
            std::set<Symbol> on;
            std::istringstream in(read_file(file));
            std::string token;
            while (in >> token) {
                on.insert(Symbol::unchecked(token));
            }
            return Tier(alphabet, std::move(on));
        }
        if (spec.empty() || spec == "ALL") {
            return Tier::full(alphabet);
        }
        if (spec == "NONE") {
            return Tier::none(alphabet);
        }
        std::set<Symbol> on;
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            std::size_t comma = spec.find(',', pos);
            std::size_t end = comma == std::string::npos ? spec.size() : comma;
            if (end > pos) {
                on.insert(Symbol::unchecked(spec.substr(pos, end - pos)));
            }
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        return Tier(alphabet, std::move(on));
    }
};

std::string verdict_line(const Verdict& verdict) {
    std::string line = "VERDICT member=";
    line += verdict.member ? "true" : "false";
    if (verdict.witness.has_value()) {
        line += " witness_w=" + verdict.witness->w.to_string();
        line += " witness_x=" + verdict.witness->x.to_string();
    }
    return line;
}

void print_verdict(const Verdict& verdict) {
    if (verdict.member) {
        std::cout << "member\n";
    } else {
        std::cout << "not a member\n";
        if (verdict.witness.has_value()) {
            std::cout << "  witness w: '" << verdict.witness->w.to_string() << "'\n";
            std::cout << "  witness x: '" << verdict.witness->x.to_string() << "'\n";
            std::cout << "  translations differ on: '" << verdict.witness->continuation.to_string()
                      << "'\n";
        }
    }
    std::cout << verdict_line(verdict) << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"subregular transducer toolkit"};
    app.require_subcommand(1);

    // apply
    auto* apply_cmd = app.add_subcommand("apply", "run a machine on an input string");
    MachineArgs apply_machine;
    std::string apply_word;
    apply_machine.attach(apply_cmd);
    auto* apply_word_opt = apply_cmd->add_option("word", apply_word, "whitespace-separated input symbols");

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "print the transition labels along a run");
    MachineArgs trace_machine;
    std::string trace_word;
    trace_machine.attach(trace_cmd);
    auto* trace_word_opt = trace_cmd->add_option("word", trace_word, "whitespace-separated input symbols");

    // ftop / run / actions (function-level views)
    auto* ftop_cmd = app.add_subcommand("ftop", "longest common prefix of all outputs on extensions");
    MachineArgs ftop_machine;
    std::string ftop_word;
    ftop_machine.attach(ftop_cmd);
    auto* ftop_word_opt = ftop_cmd->add_option("word", ftop_word, "whitespace-separated input symbols");

    auto* run_cmd = app.add_subcommand("run", "the function's action history on an input");
    MachineArgs run_machine;
    std::string run_word;
    run_machine.attach(run_cmd);
    auto* run_word_opt = run_cmd->add_option("word", run_word, "whitespace-separated input symbols");

    auto* actions_cmd = app.add_subcommand("actions", "the function's action alphabet");
    MachineArgs actions_machine;
    actions_machine.attach(actions_cmd);

    // onward / minimize / dot
    auto* onward_cmd = app.add_subcommand("onward", "onwardize a machine");
    MachineArgs onward_machine;
    std::string onward_out;
    onward_machine.attach(onward_cmd);
    onward_cmd->add_option("-o,--output", onward_out, "output file (default stdout)");

    auto* minimize_cmd = app.add_subcommand("minimize", "canonical minimal form");
    MachineArgs minimize_machine;
    std::string minimize_out;
    minimize_machine.attach(minimize_cmd);
    minimize_cmd->add_option("-o,--output", minimize_out, "output file (default stdout)");

    auto* dot_cmd = app.add_subcommand("dot", "Graphviz export");
    MachineArgs dot_machine;
    std::string dot_out;
    dot_machine.attach(dot_cmd);
    dot_cmd->add_option("-o,--output", dot_out, "output file (default stdout)");

    // equiv
    auto* equiv_cmd =
        app.add_subcommand("equiv", "decide whether two machines compute the same function");
    std::string equiv_a;
    std::string equiv_b;
    equiv_cmd->add_option("first", equiv_a, "machine file")->required();
    equiv_cmd->add_option("second", equiv_b, "machine file")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "exact class membership");
    MachineArgs check_machine;
    TierArgs check_tier;
    std::string check_class;
    std::size_t check_i = 1;
    std::size_t check_j = 1;
    std::size_t check_k = 2;
    bool check_brute = false;
    std::size_t check_bound = 6;
    check_machine.attach(check_cmd);
    check_tier.attach(check_cmd);
    check_cmd->add_option("--class", check_class, "tiosl or tssl")
        ->required()
        ->check(CLI::IsMember({"tiosl", "tssl"}));
    check_cmd->add_option("--i", check_i, "input window (tiosl)");
    check_cmd->add_option("--j", check_j, "output window (tiosl)");
    check_cmd->add_option("--k", check_k, "action window (tssl)");
    check_cmd->add_flag("--brute", check_brute, "use the enumeration oracle instead");
    check_cmd->add_option("--bound", check_bound, "string length bound for --brute");

    // search-tiers
    auto* search_cmd = app.add_subcommand("search-tiers", "evaluate every tier at bounded windows");
    MachineArgs search_machine;
    std::string search_class;
    std::size_t search_max_i = 2;
    std::size_t search_max_j = 2;
    std::size_t search_max_k = 2;
    search_machine.attach(search_cmd);
    search_cmd->add_option("--class", search_class, "tiosl or tssl")
        ->required()
        ->check(CLI::IsMember({"tiosl", "tssl"}));
    search_cmd->add_option("--max-i", search_max_i, "largest input window");
    search_cmd->add_option("--max-j", search_max_j, "largest output window");
    search_cmd->add_option("--max-k", search_max_k, "largest action window");

    // build
    auto* build_cmd = app.add_subcommand("build", "construct the canonical window machine");
    MachineArgs build_machine;
    TierArgs build_tier;
    std::string build_class;
    std::size_t build_i = 1;
    std::size_t build_j = 1;
    std::size_t build_k = 2;
    bool build_full = false;
    std::string build_out;
    build_machine.attach(build_cmd);
    build_tier.attach(build_cmd);
    build_cmd->add_option("--class", build_class, "tiosl or tssl")
        ->required()
        ->check(CLI::IsMember({"tiosl", "tssl"}));
    build_cmd->add_option("--i", build_i, "input window (tiosl)");
    build_cmd->add_option("--j", build_j, "output window (tiosl)");
    build_cmd->add_option("--k", build_k, "action window (tssl)");
    build_cmd->add_flag("--full-state-set", build_full, "materialize the whole window set");
    build_cmd->add_option("-o,--output", build_out, "output file (default stdout)");

    // decompose
    auto* decompose_cmd = app.add_subcommand(
        "decompose", "factor a machine into a state-tagging step and a tag-erasing homomorphism");
    std::string decompose_in;
    std::vector<std::string> decompose_out;
    decompose_cmd->add_option("machine", decompose_in, "machine file (- for stdin)")->required();
    decompose_cmd->add_option("-o,--output", decompose_out,
                              "two outputs: tagging machine, then homomorphism");

    // builtin
    auto* builtin_cmd = app.add_subcommand("builtin", "print a bundled machine");
    std::string builtin_arg;
    builtin_cmd->add_option("name", builtin_arg, "one of the bundled machines")
        ->required()
        ->check(CLI::IsMember(builtin_names()));

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "run the bundled word lists through the formulas");
    std::string demo_dir = "data";
    demo_cmd->add_option("--data", demo_dir, "directory with the bundled word lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    if (apply_cmd->parsed()) {
        bool have_word = apply_word_opt->count() > 0;
        apply_machine.shift_word_into(apply_word, have_word);
        if (!have_word) {
            raise(ErrorCode::ParseError, "no input word given");
        }
        std::cout << transduce(apply_machine.load(), Str::parse(apply_word)).to_string() << "\n";
        return kExitOk;
    }
    if (trace_cmd->parsed()) {
        bool have_word = trace_word_opt->count() > 0;
        trace_machine.shift_word_into(trace_word, have_word);
        if (!have_word) {
            raise(ErrorCode::ParseError, "no input word given");
        }
        std::cout << run_trace(trace_machine.load(), Str::parse(trace_word)).to_string() << "\n";
        return kExitOk;
    }
    if (ftop_cmd->parsed()) {
        bool have_word = ftop_word_opt->count() > 0;
        ftop_machine.shift_word_into(ftop_word, have_word);
        if (!have_word) {
            raise(ErrorCode::ParseError, "no input word given");
        }
        FunctionHandle handle = FunctionHandle::from_machine(ftop_machine.load());
        std::cout << handle.f_top(Str::parse(ftop_word)).to_string() << "\n";
        return kExitOk;
    }
    if (run_cmd->parsed()) {
        bool have_word = run_word_opt->count() > 0;
        run_machine.shift_word_into(run_word, have_word);
        if (!have_word) {
            raise(ErrorCode::ParseError, "no input word given");
        }
        FunctionHandle handle = FunctionHandle::from_machine(run_machine.load());
        std::cout << handle.run_of(Str::parse(run_word)).to_string() << "\n";
        return kExitOk;
    }
    if (actions_cmd->parsed()) {
        FunctionHandle handle = FunctionHandle::from_machine(actions_machine.load());
        for (const Action& action : handle.actions()) {
            std::cout << action.to_symbol().token() << "\n";
        }
        return kExitOk;
    }
    if (onward_cmd->parsed()) {
        write_file(onward_out, serialize(make_onward(onward_machine.load())));
        return kExitOk;
    }
    if (minimize_cmd->parsed()) {
        write_file(minimize_out, serialize(minimize(minimize_machine.load())));
        return kExitOk;
    }
    if (dot_cmd->parsed()) {
        write_file(dot_out, to_dot(dot_machine.load()));
        return kExitOk;
    }
    if (equiv_cmd->parsed()) {
        bool same = equivalent(parse_sfst(read_file(equiv_a)), parse_sfst(read_file(equiv_b)));
        std::cout << (same ? "equivalent" : "not equivalent") << "\n";
        return same ? kExitOk : kExitNegative;
    }
    if (check_cmd->parsed()) {
        FunctionHandle handle = FunctionHandle::from_machine(check_machine.load());
        Verdict verdict;
        if (check_class == "tiosl") {
            std::set<Symbol> joint = handle.input_alphabet();
            joint.insert(handle.output_alphabet().begin(), handle.output_alphabet().end());
            Tier tier = check_tier.resolve(joint);
            verdict = check_brute
                          ? brute_check_tiosl(handle, {check_i, check_j}, tier, check_bound)
                          : check_tiosl(handle, {check_i, check_j}, tier);
        } else {
            Tier tier = check_tier.resolve(action_symbols(handle.actions()));
            verdict = check_brute ? brute_check_tssl(handle, check_k, tier, check_bound)
                                  : check_tssl(handle, check_k, tier);
        }
        print_verdict(verdict);
        return verdict.member ? kExitOk : kExitNegative;
    }
    if (search_cmd->parsed()) {
        FunctionHandle handle = FunctionHandle::from_machine(search_machine.load());
        SearchReport report = search_class == "tiosl"
                                  ? search_tiers_tiosl(handle, search_max_i, search_max_j)
                                  : search_tiers_tssl(handle, search_max_k);
        for (const SearchEntry& entry : report.entries) {
            std::cout << "tier={";
            for (std::size_t i = 0; i < entry.on_tier.size(); ++i) {
                std::cout << (i > 0 ? "," : "") << entry.on_tier[i].token();
            }
            std::cout << "} ";
            if (search_class == "tiosl") {
                std::cout << "i=" << entry.params.input_locality
                          << " j=" << entry.params.output_locality;
            } else {
                std::cout << "k=" << entry.k;
            }
            std::cout << " member=" << (entry.verdict.member ? "true" : "false") << "\n";
        }
        if (report.any_member()) {
            std::cout << "SUMMARY member under " << report.members().size() << " of "
                      << report.entries.size() << " settings\n";
            return kExitOk;
        }
        std::cout << "SUMMARY no tier\n";
        return kExitNegative;
    }
    if (build_cmd->parsed()) {
        FunctionHandle handle = FunctionHandle::from_machine(build_machine.load());
        CanonicalOptions options{build_full};
        try {
            if (build_class == "tiosl") {
                std::set<Symbol> joint = handle.input_alphabet();
                joint.insert(handle.output_alphabet().begin(), handle.output_alphabet().end());
                write_file(build_out,
                           serialize(build_canonical_tiosl(handle, {build_i, build_j},
                                                           build_tier.resolve(joint), options)));
            } else {
                write_file(build_out,
                           serialize(build_canonical_tssl(
                               handle, build_k,
                               build_tier.resolve(action_symbols(handle.actions())), options)));
            }
            return kExitOk;
        } catch (const NotInClassError& e) {
            std::cout << "not a member\n";
            std::cout << verdict_line(Verdict{false, e.witness}) << "\n";
            return kExitNegative;
        }
    }
    if (decompose_cmd->parsed()) {
        if (decompose_out.size() != 2) {
            raise(ErrorCode::ParseError,
                  "decompose needs two -o outputs: the machine, then the homomorphism");
        }
        Decomposition parts = decompose(parse_sfst(read_file(decompose_in)));
        write_file(decompose_out[0], serialize(parts.first));
        write_file(decompose_out[1], parts.second.serialize());
        return kExitOk;
    }
    if (builtin_cmd->parsed()) {
        std::cout << serialize(builtin(builtin_arg));
        return kExitOk;
    }
    if (demo_cmd->parsed()) {
        struct Dataset {
            const char* label;
            const char* stem;
            Str (*process)(const Str&);
        };
        const Dataset datasets[] = {
            {"reduction", "ojibwe", reduction_direct},
            {"syncope", "macushi", rs_direct},
        };
        auto read_words = [&](const std::string& path) {
            std::vector<Str> words;
            std::istringstream in(read_file(path));
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') {
                    continue;
                }
                words.push_back(Str::parse(line));
            }
            return words;
        };
        for (const Dataset& dataset : datasets) {
            std::string stem = demo_dir + "/" + dataset.stem;
            SegmentClasses classes = SegmentClasses::parse(read_file(stem + ".classes"));
            std::vector<Str> underlying = read_words(stem + ".underlying");
            std::vector<Str> surface = read_words(stem + ".surface");
            if (underlying.size() != surface.size()) {
                raise(ErrorCode::ParseError, "word lists for '" + std::string(dataset.stem) +
                                                 "' differ in length");
            }
            std::cout << "== " << dataset.label << "\n";
            for (std::size_t i = 0; i < underlying.size(); ++i) {
                Str computed = dataset.process(classes.transliterate(underlying[i]));
                Str surface_classes = classes.transliterate(surface[i]);
                bool match = computed == surface_classes;
                std::cout << underlying[i].to_string() << " -> " << surface[i].to_string() << " : "
                          << "computed " << computed.to_string() << " vs surface "
                          << surface_classes.to_string() << (match ? "" : "  [MISMATCH]") << "\n";
            }
        }
        return kExitOk;
    }
    return kExitError;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return kExitError;
    }
}
