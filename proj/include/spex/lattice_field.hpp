#ifndef SPEX_LATTICE_FIELD_HPP
#define SPEX_LATTICE_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spex {

/// An n x n grid of strictly positive field values observed on
/// {1..n}^2, stored row-major (site (i,j) at (i-1)*n + (j-1)), plus
/// provenance of the generating model.
struct LatticeField {
    int n = 0;
    std::vector<double> values;
    std::string model;
    std::string params;
    std::uint64_t seed = 0;

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i - 1) * n + (j - 1)];
    }
    double& at(int i, int j) {
        return values[static_cast<std::size_t>(i - 1) * n + (j - 1)];
    }

    /// Checks n >= 1, size n^2, and that every value is finite and > 0.
    void validate() const;
};

/// Text dump: header line `n,model,params,seed`, then n rows of n values
/// at 17 significant digits.
void write_field_csv(const LatticeField& field, const std::string& path);

/// Raw dump: 16-byte header (8-byte magic "SPEXFLD1", little-endian
/// uint64 n), then n^2 little-endian doubles, row-major.
void write_field_binary(const LatticeField& field, const std::string& path);

LatticeField read_field_csv(const std::string& path);
LatticeField read_field_binary(const std::string& path);

/// Dispatch on the `.bin` extension, otherwise CSV.
void write_field(const LatticeField& field, const std::string& path);
LatticeField read_field(const std::string& path);

} // namespace spex

#endif
