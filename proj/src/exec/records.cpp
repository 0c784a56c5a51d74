#include "bssvm/records.hpp"

#include <sstream>

#include <json.hpp>

namespace bssvm {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string stream_record(std::size_t n, const OutputVector& v) {
    std::string out = "{\"n\": " + std::to_string(n) + ", \"dim\": " + std::to_string(v.size()) + ", \"values\": [";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + quoted(v[k].str());
    return out + "]}";
}

std::string stream_to_jsonl(const std::vector<OutputVector>& vectors) {
    std::string out;
    for (std::size_t k = 0; k < vectors.size(); ++k) out += stream_record(k + 1, vectors[k]) + "\n";
    return out;
}

std::vector<OutputVector> parse_stream_jsonl(const std::string& text) {
    std::vector<OutputVector> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto where = "line " + std::to_string(line_no) + ": ";
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(where + "not JSON");
        }
        if (!j.is_object() || !j.contains("n") || !j.contains("dim") || !j.contains("values") ||
            !j["n"].is_number_integer() || !j["dim"].is_number_integer() || !j["values"].is_array())
            throw ParseError(where + "expected {\"n\", \"dim\", \"values\"}");
        if (j["n"].get<long long>() != static_cast<long long>(out.size()) + 1)
            throw ParseError(where + "records must be numbered 1, 2, ...");
        OutputVector v;
        for (const auto& x : j["values"]) {
            if (!x.is_string()) throw ParseError(where + "values must be \"p/q\" strings");
            v.push_back(Rational::parse(x.get<std::string>()));
        }
        if (j["dim"].get<long long>() != static_cast<long long>(v.size()))
            throw ParseError(where + "dim does not match the number of values");
        out.push_back(std::move(v));
    }
    return out;
}

std::string branch_record(const BranchRecord& b) {
    return "{\"pc\": " + std::to_string(b.pc) + ", \"kind\": " + quoted(std::string(opcode_name(b.kind))) +
           ", \"taken\": " + (b.taken ? "true" : "false") + ", \"lhs\": " + quoted(b.lhs.str()) +
           ", \"rhs\": " + quoted(b.rhs.str()) + ", \"difference\": " + quoted(b.difference.str()) + "}";
}

std::string trace_to_jsonl(const PathTrace& t) {
    std::string out;
    for (const auto& b : t.branches) out += branch_record(b) + "\n";
    return out;
}

}  // namespace bssvm
