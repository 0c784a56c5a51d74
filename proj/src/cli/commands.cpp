#include "bssvm/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bssvm/assembler.hpp"
#include "bssvm/goedel.hpp"
#include "bssvm/oracle.hpp"
#include "bssvm/records.hpp"
#include "bssvm/stdlib.hpp"
#include "bssvm/transforms.hpp"

namespace bssvm {

namespace {

/// Raised for bad command lines that CLI11 itself cannot see.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Program resolve_program(const std::string& ref) {
    const std::string prefix = "stdlib:";
    if (ref.rfind(prefix, 0) == 0) {
        try {
            return stdlib_entry(ref.substr(prefix.size())).program;
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    }
    return load_program_file(ref);
}

std::vector<Rational> parse_input(const std::string& text) {
    std::vector<Rational> out;
    if (text.empty()) return out;
    std::istringstream parts(text);
    std::string part;
    while (std::getline(parts, part, ',')) out.push_back(Rational::parse(part));
    return out;
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("BSSVM_BUDGET")) {
        Rational q = Rational::parse(env);
        if (q.is_integer() && q.sign() > 0 && q.numerator().fits_ulong_p()) return q.numerator().get_ui();
        throw UsageError("BSSVM_BUDGET must be a positive integer");
    }
    return 100000;
}

std::string join_values(const OutputVector& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunArgs {
    std::string program;
    std::string input;
    std::string mode = "bss";
    std::size_t count = 10;
    std::uint64_t budget = 0;
    std::string oracle;
    std::string oracle_log;
    std::string format = "human";
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    Program p = resolve_program(a.program);
    auto input = parse_input(a.input);
    std::unique_ptr<Oracle> oracle;
    if (!a.oracle.empty()) oracle = std::make_unique<Oracle>(parse_policy(a.oracle));
    RunOptions opts;
    opts.budget = a.budget ? a.budget : default_budget();
    opts.oracle = oracle.get();
    int status = kExitOk;
    if (a.mode == "bss") {
        RunOutcome o = run_bss(p, input, opts);
        if (a.format == "json") {
            if (const auto* t = std::get_if<Terminated>(&o)) out << stream_record(1, t->output) << "\n";
        } else {
            out << describe(o) << "\n";
        }
        if (!std::holds_alternative<Terminated>(o)) {
            if (a.format == "json") err << describe(o) << "\n";
            status = kExitDiverged;
        }
    } else {
        StreamMode mode = a.mode == "strong" ? StreamMode::Strong : StreamMode::Weak;
        OutputStream s = run_stream(p, input, a.count, mode, opts);
        if (a.format == "json") {
            out << stream_to_jsonl(s.vectors);
        } else {
            for (std::size_t n = 0; n < s.vectors.size(); ++n) out << n + 1 << ": " << join_values(s.vectors[n]) << "\n";
        }
        if (s.aborted) {
            err << "Aborted(" << *s.aborted << ") after " << s.vectors.size() << " outputs\n";
            status = kExitDiverged;
        } else if (s.exhausted_budget && !s.halted) {
            err << "Diverged(" << opts.budget << ") after " << s.vectors.size() << " outputs\n";
            status = kExitDiverged;
        } else if (s.exhausted_budget) {
            err << "halted after " << s.vectors.size() << " outputs\n";
        }
    }
    if (oracle && !a.oracle_log.empty()) {
        std::ofstream log(a.oracle_log);
        log << oracle->dump_log();
    }
    return status;
}

int cmd_trace(const RunArgs& a, std::ostream& out) {
    Program p = resolve_program(a.program);
    std::unique_ptr<Oracle> oracle;
    if (!a.oracle.empty()) oracle = std::make_unique<Oracle>(parse_policy(a.oracle));
    RunOptions opts;
    opts.budget = a.budget ? a.budget : default_budget();
    opts.oracle = oracle.get();
    PathTrace t = record_path(p, parse_input(a.input), opts);
    out << trace_to_jsonl(t);
    return t.halted ? kExitOk : kExitDiverged;
}

struct TransformArgs {
    std::string name;
    std::vector<std::string> inputs;
    std::string scheme;
    std::string output;
};

const std::vector<std::pair<std::string, std::string>>& transformer_help() {
    static const std::vector<std::pair<std::string, std::string>> names = {
        {"weak-to-strong", "IN: weak machine -> strong machine with halting queries"},
        {"strong-to-weak", "IN: strong machine with queries -> weak machine (simulation levels)"},
        {"limit-searcher", "IN: weak machine -> the counterexample searcher used by weak-to-strong"},
        {"epihypo", "EPI HYPO: semideciders of the strict epi-/hypograph -> strong evaluator"},
        {"charfn-decider", "IN: strong characteristic function -> decider"},
        {"cauchy", "IN: scalar stream -> stream of |y_n - y_m| in diagonal order"},
        {"sigma2-boundedness", "W: decider on (x, y, z) -> machine bounded iff some y has all z in W"},
        {"sigma3-nonconvergence", "W: decider on (x, u, v, w) -> machine divergent iff the formula holds"},
        {"sigma2-weak-semidecision", "ENUM: box enumerator on (j, i) -> boundedness reduction"},
        {"continuous-eval", "--scheme NAME: polynomial approximation evaluator"},
        {"compose", "G --scheme NAME: scheme applied to the strong machine G"},
    };
    return names;
}

int cmd_transform(const TransformArgs& a, std::ostream& out, std::ostream& err) {
    auto need = [&](std::size_t k) {
        if (a.inputs.size() != k)
            throw UsageError("transform " + a.name + " takes " + std::to_string(k) + " program(s)");
    };
    auto scheme = [&]() {
        if (a.scheme.empty()) throw UsageError("transform " + a.name + " needs --scheme");
        try {
            return named_scheme(a.scheme);
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    };
    auto in = [&](std::size_t k) { return resolve_program(a.inputs.at(k)); };
    std::optional<Program> result;
    const auto& n = a.name;
    bool known = false;
    for (const auto& [name, help] : transformer_help()) known = known || name == n;
    if (!known) {
        err << "unknown transformer '" << n << "'; known:";
        for (const auto& [name, help] : transformer_help()) err << " " << name;
        err << "\n";
        return kExitUsage;
    }
    if (n == "weak-to-strong") need(1), result = weak_to_strong(in(0));
    else if (n == "strong-to-weak") need(1), result = strong_oracle_to_weak(in(0));
    else if (n == "limit-searcher") need(1), result = limit_searcher(in(0));
    else if (n == "epihypo") need(2), result = epihypo_to_strong(in(0), in(1));
    else if (n == "charfn-decider") need(1), result = strong_charfn_to_decider(in(0));
    else if (n == "cauchy") need(1), result = cauchy_transform(in(0));
    else if (n == "sigma2-boundedness") need(1), result = sigma2_to_boundedness({in(0), Quantifiers::Sigma2});
    else if (n == "sigma3-nonconvergence") need(1), result = sigma3_to_nonconvergence({in(0), Quantifiers::Sigma3});
    else if (n == "sigma2-weak-semidecision") need(1), result = sigma2_to_weak_semidecision(in(0));
    else if (n == "continuous-eval") need(0), result = continuous_eval(scheme());
    else if (n == "compose") need(1), result = compose_strong_continuous(in(0), scheme());

    std::string text = print_program(*result);
    if (a.output.empty() || a.output == "-") {
        out << text;
    } else {
        std::ofstream f(a.output);
        if (!f) throw std::runtime_error("cannot write " + a.output);
        f << text;
    }
    return kExitOk;
}

int cmd_validate(const std::string& path, std::size_t upto, std::ostream& out) {
    auto vectors = parse_stream_jsonl(read_file(path));
    std::size_t k = upto ? upto : vectors.size();
    if (k > vectors.size()) throw UsageError("--upto exceeds the stream length");
    Validation v = validate_strong(vectors, k);
    if (std::holds_alternative<Valid>(v)) {
        out << "Valid (" << k << " entries)\n";
        return kExitOk;
    }
    const auto& bad = std::get<Violation>(v);
    out << "Violation n=" << bad.n << " m=" << bad.m << "\n";
    out << "  y_" << bad.n << " = (" << join_values(vectors[bad.n - 1]) << ")\n";
    out << "  y_" << bad.m << " = (" << join_values(vectors[bad.m - 1]) << ")\n";
    return kExitFailure;
}

int cmd_list(std::ostream& out) {
    for (const auto& e : stdlib_entries())
        out << e.name << " [" << mode_name(e.mode) << "] " << e.contract << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact real-RAM machine runner"};
    app.require_subcommand(1);

    RunArgs run;
    auto add_run_options = [&](CLI::App* c) {
        c->add_option("program", run.program, "program file or stdlib:NAME")->required();
        c->add_option("--input", run.input, "comma-separated rationals p/q");
        c->add_option("--budget", run.budget, "step budget (default $BSSVM_BUDGET or 100000)")
            ->check(CLI::PositiveNumber);
        c->add_option("--oracle", run.oracle, "budget:N, layered:N or table:PATH");
    };
    auto* c_run = app.add_subcommand("run", "run a program");
    add_run_options(c_run);
    c_run->add_option("--mode", run.mode, "bss, strong or weak")->check(CLI::IsMember({"bss", "strong", "weak"}));
    c_run->add_option("--count", run.count, "stream length")->check(CLI::PositiveNumber);
    c_run->add_option("--format", run.format, "human or json")->check(CLI::IsMember({"human", "json"}));
    c_run->add_option("--oracle-log", run.oracle_log, "write the oracle answer log here");

    auto* c_trace = app.add_subcommand("trace", "record branch decisions as JSON lines");
    add_run_options(c_trace);

    TransformArgs tr;
    auto* c_tr = app.add_subcommand("transform", "build a machine from machines");
    c_tr->add_option("name", tr.name, "transformer")->required();
    c_tr->add_option("inputs", tr.inputs, "input programs");
    c_tr->add_option("--scheme", tr.scheme, "approximation scheme: identity, square, double, exp");
    c_tr->add_option("-o,--output", tr.output, "output file (default stdout)");

    std::string stream_path;
    std::size_t upto = 0;
    auto* c_val = app.add_subcommand("validate", "check the strong pairwise bound on a stream dump");
    c_val->add_option("stream", stream_path, "JSON-lines stream")->required();
    c_val->add_option("--upto", upto, "check entries 1..N (default all)");

    auto* c_list = app.add_subcommand("list", "list stdlib machines");
    auto* c_names = app.add_subcommand("transformers", "list transformers");

    std::string prog_ref;
    auto* c_enc = app.add_subcommand("encode", "print the code of a program in hex");
    c_enc->add_option("program", prog_ref, "program file or stdlib:NAME")->required();
    std::string hex;
    auto* c_dec = app.add_subcommand("decode", "print the program with a given hex code");
    c_dec->add_option("code", hex, "hex code")->required();
    auto* c_show = app.add_subcommand("show", "print a program in canonical form");
    c_show->add_option("program", prog_ref, "program file or stdlib:NAME")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_run->parsed()) return cmd_run(run, out, err);
        if (c_trace->parsed()) return cmd_trace(run, out);
        if (c_tr->parsed()) return cmd_transform(tr, out, err);
        if (c_val->parsed()) return cmd_validate(stream_path, upto, out);
        if (c_list->parsed()) return cmd_list(out);
        if (c_names->parsed()) {
            for (const auto& [name, help] : transformer_help()) out << name << "  " << help << "\n";
            return kExitOk;
        }
        if (c_enc->parsed()) {
            out << encode_machine(resolve_program(prog_ref)).hex() << "\n";
            return kExitOk;
        }
        if (c_dec->parsed()) {
            out << print_program(decode_machine(GoedelCode::from_hex(hex)));
            return kExitOk;
        }
        if (c_show->parsed()) {
            out << print_program(resolve_program(prog_ref));
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const ValidationError& e) {
        err << "invalid program: " << e.what() << "\n";
        return kExitDataError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const DecodeError& e) {
        err << "decode error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace bssvm
