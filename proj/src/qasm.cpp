#include "dqc/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dqc {
namespace {

std::string format_angle(double theta) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

// Cursor over the raw text with 1-based line/column tracking.
class Scanner {
  public:
    explicit Scanner(const std::string& text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    int line() const { return line_; }
    int column() const { return col_; }

    void skip_space() {
        while (!eof()) {
            const char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (!eof() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, col_, message); }

    void expect(char c) {
        skip_space();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool consume(char c) {
        skip_space();
        if (!eof() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string identifier() {
        skip_space();
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string id;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            id += peek();
            advance();
        }
        return id;
    }

    int integer() {
        skip_space();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000) fail("integer out of range");
            advance();
        }
        return static_cast<int>(v);
    }

    double real() {
        skip_space();
        std::string num;
        if (!eof() && (peek() == '+' || peek() == '-')) {
            num += peek();
            advance();
        }
        bool digits = false;
        auto take_digits = [&] {
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                num += peek();
                advance();
                digits = true;
            }
        };
        take_digits();
        if (!eof() && peek() == '.') {
            num += peek();
            advance();
            take_digits();
        }
        if (!digits) fail("expected numeric literal (symbolic angles are not supported)");
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            num += peek();
            advance();
            if (!eof() && (peek() == '+' || peek() == '-')) {
                num += peek();
                advance();
            }
            bool exp_digits = false;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                num += peek();
                advance();
                exp_digits = true;
            }
            if (!exp_digits) fail("malformed exponent");
        }
        return std::stod(num);
    }

    std::string string_literal() {
        skip_space();
        if (eof() || peek() != '"') fail("expected string literal");
        advance();
        std::string s;
        while (!eof() && peek() != '"') {
            s += peek();
            advance();
        }
        if (eof()) fail("unterminated string literal");
        advance();
        return s;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::string circuit_to_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.n_qubits << "];\n";
    out << "creg c[" << c.n_qubits << "];\n";
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::MEASURE) {
            out << "measure q[" << g.q0() << "] -> c[" << g.q0() << "];\n";
            continue;
        }
        out << kind_name(g.kind);
        if (has_angle(g.kind)) out << "(" << format_angle(g.theta) << ")";
        out << " q[" << g.q0() << "]";
        if (g.arity() == 2) out << ",q[" << g.q1() << "]";
        out << ";\n";
    }
    return out.str();
}

Circuit qasm_to_circuit(const std::string& text) {
    Scanner s(text);

    auto qubit_operand = [&s](const std::string& reg_name) {
        const int l = s.line(), c = s.column();
        const std::string id = s.identifier();
        if (id != reg_name) throw ParseError(l, c, "unknown register '" + id + "'");
        s.expect('[');
        const int idx = s.integer();
        s.expect(']');
        return idx;
    };

    // Header.
    {
        s.skip_space();
        const int l = s.line(), c = s.column();
        if (s.identifier() != "OPENQASM") throw ParseError(l, c, "expected OPENQASM header");
        const double version = s.real();
        if (version != 2.0) throw ParseError(l, c, "unsupported OPENQASM version");
        s.expect(';');
    }

    Circuit circ;
    std::string qreg_name, creg_name;
    int creg_size = 0;
    bool saw_qreg = false;

    while (true) {
        s.skip_space();
        if (s.eof()) break;
        const int l = s.line(), c = s.column();
        const std::string word = s.identifier();

        if (word == "include") {
            const std::string inc = s.string_literal();
            if (inc != "qelib1.inc") throw ParseError(l, c, "unsupported include '" + inc + "'");
            s.expect(';');
            continue;
        }
        if (word == "qreg") {
            if (saw_qreg) throw ParseError(l, c, "duplicate qreg declaration");
            qreg_name = s.identifier();
            s.expect('[');
            circ.n_qubits = s.integer();
            s.expect(']');
            s.expect(';');
            saw_qreg = true;
            continue;
        }
        if (word == "creg") {
            creg_name = s.identifier();
            s.expect('[');
            creg_size = s.integer();
            s.expect(']');
            s.expect(';');
            continue;
        }
        if (!saw_qreg) throw ParseError(l, c, "statement before qreg declaration");

        if (word == "measure") {
            const int q = qubit_operand(qreg_name);
            s.skip_space();
            s.expect('-');
            s.expect('>');
            if (creg_name.empty()) throw ParseError(l, c, "measure without creg declaration");
            const int bit = qubit_operand(creg_name);
            if (bit >= creg_size) throw ParseError(l, c, "classical bit index out of range");
            s.expect(';');
            circ.add(Gate::measure(q));
            continue;
        }

        GateKind kind;
        if (word == "h") kind = GateKind::H;
        else if (word == "x") kind = GateKind::X;
        else if (word == "rx") kind = GateKind::RX;
        else if (word == "rz") kind = GateKind::RZ;
        else if (word == "rzz") kind = GateKind::RZZ;
        else if (word == "cx") kind = GateKind::CNOT;
        else if (word == "cp") kind = GateKind::CPHASE;
        else if (word == "swap") kind = GateKind::SWAP;
        else throw ParseError(l, c, "unknown gate '" + word + "'");

        Gate g;
        g.kind = kind;
        if (has_angle(kind)) {
            s.expect('(');
            g.theta = s.real();
            s.expect(')');
        }
        g.qubits[0] = qubit_operand(qreg_name);
        if (is_two_qubit(kind)) {
            s.expect(',');
            g.qubits[1] = qubit_operand(qreg_name);
        } else {
            g.qubits[1] = -1;
        }
        s.expect(';');
        circ.add(g);
    }

    if (!saw_qreg) throw ParseError(1, 1, "missing qreg declaration");
    circ.validate();
    return circ;
}

void write_circuit(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << circuit_to_qasm(c);
}

Circuit read_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return qasm_to_circuit(buf.str());
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ":" + e.what());
    }
}

}  // namespace dqc
