#include "spex/lattice_field.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spex {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'E', 'X', 'F', 'L', 'D', '1'};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void LatticeField::validate() const {
    if (n < 1) throw std::invalid_argument("LatticeField: n must be >= 1");
    if (values.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("LatticeField: value count != n^2");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument("LatticeField: values must be finite and positive");
        }
    }
}

void write_field_csv(const LatticeField& field, const std::string& path) {
    field.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << field.n << ',' << field.model << ',' << field.params << ',' << field.seed << '\n';
    for (int i = 1; i <= field.n; ++i) {
        for (int j = 1; j <= field.n; ++j) {
            if (j > 1) out << ',';
            out << format_g17(field.at(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

LatticeField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty field file: " + path);

    LatticeField field;
    {
        std::istringstream hs(header);
        std::string tok;
        if (!std::getline(hs, tok, ',')) throw std::runtime_error("bad field header: " + path);
        field.n = std::stoi(tok);
        std::getline(hs, field.model, ',');
        std::getline(hs, field.params, ',');
        if (std::getline(hs, tok, ',')) field.seed = std::stoull(tok);
    }
    field.values.reserve(static_cast<std::size_t>(field.n) * field.n);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            field.values.push_back(std::stod(tok));
        }
    }
    field.validate();
    return field;
}

void write_field_binary(const LatticeField& field, const std::string& path) {
    field.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(kMagic, 8);
    const auto n64 = static_cast<std::uint64_t>(field.n);
    out.write(reinterpret_cast<const char*>(&n64), 8);
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

LatticeField read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[8];
    std::uint64_t n64 = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&n64), 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) {
        throw std::runtime_error("not a field binary: " + path);
    }
    LatticeField field;
    field.n = static_cast<int>(n64);
    field.model = "binary";
    field.values.resize(n64 * n64);
    in.read(reinterpret_cast<char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated field binary: " + path);
    field.validate();
    return field;
}

void write_field(const LatticeField& field, const std::string& path) {
    if (ends_with(path, ".bin")) {
        write_field_binary(field, path);
    } else {
        write_field_csv(field, path);
    }
}

LatticeField read_field(const std::string& path) {
    if (ends_with(path, ".bin")) return read_field_binary(path);
    return read_field_csv(path);
}

} // namespace spex
