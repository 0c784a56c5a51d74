#include "bssvm/assembler.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace bssvm {

namespace {

struct Token {
    std::string text;
    int column;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_integer(std::string_view s) {
    if (!s.empty() && s[0] == '-') s.remove_prefix(1);
    return all_digits(s);
}

// r12 / i3 / c0
std::optional<Operand> register_operand(std::string_view s) {
    if (s.size() < 2 || !all_digits(s.substr(1)) || s.size() > 14) return std::nullopt;
    std::int64_t k = std::stoll(std::string(s.substr(1)));
    switch (s[0]) {
        case 'r': return Operand::real(k);
        case 'i': return Operand::index(k);
        case 'c': return Operand::constant(k);
        default: return std::nullopt;
    }
}

std::vector<Token> tokenize(std::string_view line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (c == ':' || c == '=') {
            out.push_back({std::string(1, c), static_cast<int>(start) + 1});
            ++i;
            continue;
        }
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',' &&
               line[i] != ':' && line[i] != '=')
            ++i;
        std::string text(line.substr(start, i - start));
        for (char ch : text)
            if (!is_ident_char(ch) && ch != '-' && ch != '/' && ch != '+')
                throw SyntaxError("unexpected character '" + std::string(1, ch) + "'", line_no,
                                  static_cast<int>(start) + 1);
        out.push_back({std::move(text), static_cast<int>(start) + 1});
    }
    return out;
}

bool is_label_name(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return !register_operand(s).has_value() && s[0] != '.';
}

struct PendingOperand {
    std::string label;  // non-empty when the target is symbolic
    int line;
    int column;
};

}  // namespace

Program parse_program(std::string_view source) {
    std::vector<Instruction> instructions;
    std::vector<Rational> constants;
    std::string name;
    std::map<std::string, std::size_t> label_pc;
    std::map<std::size_t, std::string> labels;
    std::vector<std::pair<int, int>> positions;  // line, column of each instruction
    // (instruction index, operand index) -> unresolved label
    std::vector<std::tuple<std::size_t, std::size_t, PendingOperand>> pending;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t end = source.find('\n', pos);
        if (end == std::string_view::npos) end = source.size();
        std::string_view line = source.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto tokens = tokenize(line, line_no);
        if (tokens.empty()) {
            if (end == source.size()) break;
            continue;
        }

        std::size_t t = 0;
        if (tokens[0].text == ".name") {
            if (tokens.size() != 2) throw SyntaxError(".name takes one word", line_no, tokens[0].column);
            name = tokens[1].text;
            continue;
        }
        if (tokens[0].text == ".const") {
            if (tokens.size() != 4 || tokens[2].text != "=")
                throw SyntaxError("expected .const c<k> = p/q", line_no, tokens[0].column);
            auto reg = register_operand(tokens[1].text);
            if (!reg || reg->kind != OperandKind::Const)
                throw SyntaxError("expected a constant name c<k>", line_no, tokens[1].column);
            if (static_cast<std::size_t>(reg->value) != constants.size())
                throw SyntaxError("constants must be declared in order c0, c1, ...", line_no, tokens[1].column);
            try {
                constants.push_back(Rational::parse(tokens[3].text));
            } catch (const ParseError& e) {
                throw SyntaxError(e.what(), line_no, tokens[3].column);
            }
            continue;
        }
        if (tokens[0].text[0] == '.') throw SyntaxError("unknown directive " + tokens[0].text, line_no, tokens[0].column);

        if (tokens.size() >= 2 && tokens[1].text == ":") {
            if (!is_label_name(tokens[0].text))
                throw SyntaxError("bad label name '" + tokens[0].text + "'", line_no, tokens[0].column);
            if (!label_pc.emplace(tokens[0].text, instructions.size()).second)
                throw SyntaxError("duplicate label '" + tokens[0].text + "'", line_no, tokens[0].column);
            labels[instructions.size()] = tokens[0].text;
            t = 2;
            if (t == tokens.size()) continue;
        }

        auto op = opcode_from_name(tokens[t].text);
        if (!op) throw SyntaxError("unknown opcode '" + tokens[t].text + "'", line_no, tokens[t].column);
        std::vector<Token> args(tokens.begin() + static_cast<long>(t) + 1, tokens.end());
        const auto& sig = operand_signature(*op);
        bool arith = *op == Opcode::ADD || *op == Opcode::SUB || *op == Opcode::MUL || *op == Opcode::DIV;
        if (arith && args.size() == 2) args.insert(args.begin(), args[0]);
        if (args.size() != sig.size())
            throw SyntaxError(std::string(opcode_name(*op)) + " expects " + std::to_string(sig.size()) +
                                  " operands, got " + std::to_string(args.size()),
                              line_no, tokens[t].column);

        Instruction ins{*op, {}};
        for (std::size_t k = 0; k < args.size(); ++k) {
            const Token& a = args[k];
            if (a.text == ":" || a.text == "=") throw SyntaxError("unexpected '" + a.text + "'", line_no, a.column);
            Operand o;
            if (auto reg = register_operand(a.text)) {
                o = *reg;
            } else if (is_integer(a.text)) {
                if (a.text.size() > 18) throw SyntaxError("integer operand too large", line_no, a.column);
                std::int64_t v = std::stoll(a.text);
                o = (sig[k] & kind_bit(OperandKind::Target)) ? Operand::target(v) : Operand::imm(v);
            } else if (is_label_name(a.text)) {
                if (!(sig[k] & kind_bit(OperandKind::Target)))
                    throw SyntaxError("label '" + a.text + "' where a register is expected", line_no, a.column);
                o = Operand::target(-1);
                pending.emplace_back(instructions.size(), k, PendingOperand{a.text, line_no, a.column});
            } else {
                throw SyntaxError("malformed operand '" + a.text + "'", line_no, a.column);
            }
            if (!(sig[k] & kind_bit(o.kind)))
                throw SyntaxError(std::string(opcode_name(*op)) + ": operand " + std::to_string(k + 1) +
                                      " has the wrong kind",
                                  line_no, a.column);
            ins.operands.push_back(o);
        }
        instructions.push_back(std::move(ins));
        positions.emplace_back(line_no, tokens[t].column);
        if (end == source.size()) break;
    }

    for (auto& [pc, k, p] : pending) {
        auto it = label_pc.find(p.label);
        if (it == label_pc.end())
            throw ValidationError(std::to_string(p.line) + ":" + std::to_string(p.column) + ": undefined label '" +
                                  p.label + "'");
        if (it->second >= instructions.size())
            throw ValidationError(std::to_string(p.line) + ":" + std::to_string(p.column) + ": label '" + p.label +
                                  "' marks no instruction");
        instructions[pc].operands[k].value = static_cast<std::int64_t>(it->second);
    }
    if (instructions.empty()) throw ValidationError("1:1: program has no instructions");
    for (std::size_t pc = 0; pc < instructions.size(); ++pc) {
        try {
            validate_instruction(instructions[pc], instructions.size(), constants.size());
        } catch (const ValidationError& e) {
            throw ValidationError(std::to_string(positions[pc].first) + ":" + std::to_string(positions[pc].second) +
                                  ": " + e.what());
        }
    }
    // Labels past the end carry no instruction; drop them from the metadata.
    labels.erase(labels.lower_bound(instructions.size()), labels.end());
    return Program(std::move(instructions), std::move(constants), std::move(name), std::move(labels));
}

std::string print_program(const Program& p) {
    std::map<std::size_t, std::string> names = p.labels();
    std::set<std::string> used;
    for (const auto& [pc, l] : names) used.insert(l);
    for (const auto& ins : p.instructions())
        for (const auto& o : ins.operands)
            if (o.kind == OperandKind::Target && !names.count(static_cast<std::size_t>(o.value))) {
                std::string l = "L" + std::to_string(o.value);
                while (used.count(l)) l += "_";
                used.insert(l);
                names[static_cast<std::size_t>(o.value)] = l;
            }

    std::ostringstream out;
    if (!p.name().empty()) out << ".name " << p.name() << "\n";
    for (std::size_t k = 0; k < p.constants().size(); ++k) out << ".const c" << k << " = " << p.constants()[k].str() << "\n";
    for (std::size_t pc = 0; pc < p.size(); ++pc) {
        if (auto it = names.find(pc); it != names.end()) out << it->second << ":\n";
        const auto& ins = p.instructions()[pc];
        out << "    " << opcode_name(ins.op);
        for (const auto& o : ins.operands) {
            out << ' ';
            switch (o.kind) {
                case OperandKind::Real: out << 'r' << o.value; break;
                case OperandKind::Index: out << 'i' << o.value; break;
                case OperandKind::Const: out << 'c' << o.value; break;
                case OperandKind::Imm: out << o.value; break;
                case OperandKind::Target: out << names.at(static_cast<std::size_t>(o.value)); break;
            }
        }
        out << "\n";
    }
    return out.str();
}

Program load_program_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

}  // namespace bssvm
