/** \file
 * OpenQASM 2.0 subset reader/writer. Accepted statements: the version
 * header, include "qelib1.inc", one qreg, an optional creg, and the gates
 * h, x, rx, rz, rzz, cx, cp, swap, measure. Anything else is rejected with
 * a line/column diagnostic. Angles are plain decimal literals; the writer
 * emits them with enough digits to round-trip exactly.
 */
#pragma once

#include <stdexcept>
#include <string>

#include "dqc/circuit.hpp"

namespace dqc {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& message)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + message),
          line(l),
          column(c) {}
};

std::string circuit_to_qasm(const Circuit& c);
Circuit qasm_to_circuit(const std::string& text);

void write_circuit(const Circuit& c, const std::string& path);
Circuit read_circuit(const std::string& path);

}  // namespace dqc
