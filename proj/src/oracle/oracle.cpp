#include "bssvm/oracle.hpp"

#include <fstream>
#include <sstream>

namespace bssvm {

Table Table::from_map(std::map<OracleQuery, bool> entries) {
    auto shared = std::make_shared<const std::map<OracleQuery, bool>>(std::move(entries));
    return Table{[shared](const OracleQuery& q) -> std::optional<bool> {
        auto it = shared->find(q);
        if (it == shared->end()) return std::nullopt;
        return it->second;
    }};
}

std::string format_query_line(const OracleQuery& q, bool answer) {
    std::string in;
    for (std::size_t k = 0; k < q.input.size(); ++k) in += (k ? "," : "") + q.input[k].str();
    if (in.empty()) in = "-";
    return q.machine_code.hex() + " " + in + " " + (answer ? "1" : "0");
}

std::map<OracleQuery, bool> parse_table(const std::string& text) {
    std::map<OracleQuery, bool> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        std::string code, inputs, answer, extra;
        if (!(fields >> code)) continue;
        auto where = "table line " + std::to_string(line_no) + ": ";
        if (!(fields >> inputs >> answer) || (fields >> extra) || (answer != "0" && answer != "1"))
            throw ParseError(where + "expected 'code_hex inputs 0|1'");
        OracleQuery q;
        try {
            q.machine_code = GoedelCode::from_hex(code);
        } catch (const DecodeError& e) {
            throw ParseError(where + e.what());
        }
        if (inputs != "-") {
            std::istringstream parts(inputs);
            std::string part;
            while (std::getline(parts, part, ',')) q.input.push_back(Rational::parse(part));
        }
        out[q] = answer == "1";
    }
    return out;
}

std::map<OracleQuery, bool> load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str());
}

Oracle::Oracle(OraclePolicy policy) : policy_(std::move(policy)) {}
Oracle::~Oracle() = default;

std::uint64_t Oracle::current_budget() const {
    if (const auto* b = std::get_if<Budgeted>(&policy_)) return b->steps;
    if (const auto* l = std::get_if<Layered>(&policy_)) return l->level;
    return 0;
}

void Oracle::set_level(std::uint64_t level) {
    auto* l = std::get_if<Layered>(&policy_);
    if (!l) throw std::logic_error("set_level on a non-layered oracle");
    l->level = level;
}

bool Oracle::answer(const OracleQuery& q, ExecContext& ctx) {
    std::uint64_t budget = current_budget();
    auto key = std::make_pair(q, budget);
    bool result;
    if (auto it = cache_.find(key); it != cache_.end()) {
        result = it->second;
    } else if (const auto* t = std::get_if<Table>(&policy_)) {
        auto a = t->lookup(q);
        if (!a) throw UnknownQuery("query not in table: " + format_query_line(q, false).substr(0, 64));
        result = *a;
        cache_.emplace(key, result);
    } else {
        auto& bound = bounds_[budget];
        if (!bound) bound = std::make_unique<StepBoundAnswerer>(budget);
        result = bound->answer(q, ctx);
        cache_.emplace(key, result);
    }
    log_.push_back({q, budget, result});
    return result;
}

bool Oracle::halting_query(const OracleQuery& q) {
    if (!own_ctx_) own_ctx_ = std::make_unique<ExecContext>(this);
    return answer(q, *own_ctx_);
}

std::string Oracle::dump_log() const {
    std::string out;
    for (const auto& e : log_) out += format_query_line(e.query, e.answer) + "\n";
    return out;
}

OraclePolicy parse_policy(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) throw ParseError("oracle policy must look like budget:N, layered:N or table:PATH");
    std::string kind = descriptor.substr(0, colon);
    std::string arg = descriptor.substr(colon + 1);
    auto natural = [&]() {
        Rational q = Rational::parse(arg);
        if (!q.is_integer() || q.sign() <= 0 || !q.numerator().fits_ulong_p())
            throw ParseError("oracle budget must be a positive integer");
        return static_cast<std::uint64_t>(q.numerator().get_ui());
    };
    if (kind == "budget") return Budgeted{natural()};
    if (kind == "layered") return Layered{natural()};
    if (kind == "table") return Table::from_map(load_table_file(arg));
    throw ParseError("unknown oracle policy '" + kind + "'");
}

}  // namespace bssvm
