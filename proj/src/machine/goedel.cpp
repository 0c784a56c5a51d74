#include "bssvm/goedel.hpp"

#include <cctype>

namespace bssvm {

namespace {

constexpr std::uint8_t kMagic = 0x42;

void put_varint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

void put_signed(std::string& out, std::int64_t v) {
    put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

void put_bigint(std::string& out, const BigInt& v) {
    // Magnitude as big-endian bytes, length-prefixed.
    std::string bytes;
    BigInt m = abs(v);
    while (m > 0) {
        BigInt low = m & 0xff;
        bytes.insert(bytes.begin(), static_cast<char>(low.get_ui()));
        m >>= 8;
    }
    put_varint(out, bytes.size());
    out += bytes;
}

class Reader {
public:
    explicit Reader(const std::string& b) : bytes_(b) {}
    std::uint8_t byte() {
        if (pos_ >= bytes_.size()) throw DecodeError("truncated code");
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }
    std::uint64_t varint() {
        std::uint64_t v = 0;
        for (int shift = 0;; shift += 7) {
            if (shift > 63) throw DecodeError("varint overflow");
            std::uint8_t b = byte();
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) {
                if (b == 0 && shift > 0) throw DecodeError("non-canonical varint");
                return v;
            }
        }
    }
    std::int64_t signed_varint() {
        std::uint64_t z = varint();
        return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
    }
    BigInt bigint() {
        std::uint64_t n = varint();
        if (n > bytes_.size()) throw DecodeError("truncated code");
        BigInt v = 0;
        for (std::uint64_t k = 0; k < n; ++k) {
            std::uint8_t b = byte();
            if (k == 0 && b == 0) throw DecodeError("non-canonical integer");
            v = (v << 8) + b;
        }
        return v;
    }
    bool done() const { return pos_ == bytes_.size(); }

private:
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string GoedelCode::hex() const { return value.get_str(16); }

GoedelCode GoedelCode::from_hex(const std::string& text) {
    std::string t = text;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    if (t.empty()) throw DecodeError("empty hex code");
    for (char c : t)
        if (!std::isxdigit(static_cast<unsigned char>(c))) throw DecodeError("malformed hex code '" + text + "'");
    return GoedelCode{BigInt(t, 16)};
}

GoedelCode encode_machine(const Program& p) {
    std::string bytes;
    bytes.push_back(static_cast<char>(kMagic));
    put_varint(bytes, p.size());
    for (const auto& ins : p.instructions()) {
        bytes.push_back(static_cast<char>(ins.op));
        for (const auto& o : ins.operands) {
            bytes.push_back(static_cast<char>(o.kind));
            put_signed(bytes, o.value);
        }
    }
    put_varint(bytes, p.constants().size());
    for (const auto& c : p.constants()) {
        bytes.push_back(static_cast<char>(c.sign() < 0 ? 1 : 0));
        put_bigint(bytes, c.numerator());
        put_bigint(bytes, c.denominator());
    }
    BigInt v = 0;
    for (char b : bytes) v = (v << 8) + static_cast<unsigned char>(b);
    return GoedelCode{v + 1};
}

Program decode_machine(const GoedelCode& g) {
    if (g.value <= 0) throw DecodeError("0 is not a machine code");
    BigInt v = g.value - 1;
    std::string bytes;
    while (v > 0) {
        BigInt low = v & 0xff;
        bytes.insert(bytes.begin(), static_cast<char>(low.get_ui()));
        v >>= 8;
    }
    Reader r(bytes);
    if (r.byte() != kMagic) throw DecodeError("bad magic byte");
    std::uint64_t n = r.varint();
    if (n == 0 || n > bytes.size()) throw DecodeError("bad instruction count");
    std::vector<Instruction> instructions;
    for (std::uint64_t k = 0; k < n; ++k) {
        std::uint8_t op = r.byte();
        if (op >= kOpcodeCount) throw DecodeError("bad opcode byte");
        Instruction ins{static_cast<Opcode>(op), {}};
        for (std::size_t a = 0; a < operand_signature(ins.op).size(); ++a) {
            std::uint8_t kind = r.byte();
            if (kind > static_cast<std::uint8_t>(OperandKind::Target)) throw DecodeError("bad operand kind");
            ins.operands.push_back({static_cast<OperandKind>(kind), r.signed_varint()});
        }
        instructions.push_back(std::move(ins));
    }
    std::uint64_t nc = r.varint();
    if (nc > bytes.size()) throw DecodeError("bad constant count");
    std::vector<Rational> constants;
    for (std::uint64_t k = 0; k < nc; ++k) {
        std::uint8_t sign = r.byte();
        if (sign > 1) throw DecodeError("bad sign byte");
        BigInt num = r.bigint();
        BigInt den = r.bigint();
        if (den == 0) throw DecodeError("zero denominator");
        Rational q(num, den);
        if (q.numerator() != num || q.denominator() != den) throw DecodeError("constant not in lowest terms");
        if (sign == 1 && num == 0) throw DecodeError("negative zero");
        constants.push_back(sign ? -q : q);
    }
    if (!r.done()) throw DecodeError("trailing bytes after program");
    try {
        return Program(std::move(instructions), std::move(constants));
    } catch (const ValidationError& e) {
        throw DecodeError(std::string("code decodes to an invalid program: ") + e.what());
    }
}

GoedelCode code_from_rational(const Rational& q) {
    if (!q.is_integer() || q.sign() <= 0) throw DecodeError("machine code must be a positive integer, got " + q.str());
    return GoedelCode{q.numerator()};
}

}  // namespace bssvm
