#ifndef JUNTA_IO_HPP
#define JUNTA_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "junta/boolean.hpp"
#include "junta/linalg.hpp"

namespace junta {

// Truth-table format: one function per line, 2^n characters from {+,-} or
// {0,1} with 0 meaning +1; n is inferred from the line length.

inline BooleanFunction parse_truth_table_line(const std::string& line) {
    std::vector<std::int8_t> table;
    table.reserve(line.size());
    for (char c : line) {
        switch (c) {
            case '+': case '0': table.push_back(1); break;
            case '-': case '1': table.push_back(-1); break;
            case '\r': break;
            default:
                throw ArgumentError(std::string("truth table: unexpected character '") + c + "'");
        }
    }
    if (table.empty() || (table.size() & (table.size() - 1)) != 0)
        throw ArgumentError("truth table: line length must be a power of two");
    int n = 0;
    while ((std::size_t(1) << n) < table.size()) ++n;
    return BooleanFunction(n, std::move(table));
}

inline std::vector<BooleanFunction> read_truth_tables(std::istream& in) {
    std::vector<BooleanFunction> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_truth_table_line(line));
    }
    return out;
}

inline std::vector<BooleanFunction> read_truth_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open truth-table file: " + path);
    return read_truth_tables(in);
}

inline std::string format_truth_table(const BooleanFunction& f) {
    std::string line;
    line.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) line += (f.value(i) > 0) ? '+' : '-';
    return line;
}

// Matrix dump: first line is the qubit count, then 2^n rows of 2^{n+1}
// comma-separated floats (real and imaginary part of each entry, row-major).

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_unitary(std::ostream& out, const Unitary& u) {
    out << u.n() << "\n";
    for (Eigen::Index i = 0; i < u.dim(); ++i) {
        for (Eigen::Index j = 0; j < u.dim(); ++j) {
            if (j) out << ",";
            const Complex v = u.matrix()(i, j);
            out << format_double(v.real()) << "," << format_double(v.imag());
        }
        out << "\n";
    }
}

inline void write_unitary(const std::string& path, const Unitary& u) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot open matrix file for writing: " + path);
    write_unitary(out, u);
}

inline Unitary read_unitary(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw ArgumentError("matrix dump: missing qubit count");
    if (n < 1 || n > kMaxQubits) throw ArgumentError("matrix dump: qubit count out of range");
    std::string rest;
    std::getline(in, rest);
    const Eigen::Index dim = Eigen::Index(1) << n;
    CMatrix m(dim, dim);
    std::string line;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (!std::getline(in, line)) throw ArgumentError("matrix dump: truncated file");
        std::istringstream row(line);
        std::string cell;
        for (Eigen::Index j = 0; j < dim; ++j) {
            double re = 0, im = 0;
            if (!std::getline(row, cell, ',')) throw ArgumentError("matrix dump: short row");
            re = std::stod(cell);
            if (!std::getline(row, cell, ',')) throw ArgumentError("matrix dump: short row");
            im = std::stod(cell);
            m(i, j) = Complex(re, im);
        }
    }
    return Unitary(n, std::move(m));
}

inline Unitary read_unitary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open matrix file: " + path);
    return read_unitary(in);
}

}  // namespace junta

#endif
