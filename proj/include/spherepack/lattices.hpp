#pragma once

#include "spherepack/codes.hpp"
#include "spherepack/numeric.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

namespace spherepack {

// Value = coefficient * sqrt(radicand) * pi^(pi_twice/2); radicand squarefree.
struct SymbolicVolume {
    Rational coefficient = 1;
    BigInt radicand = 1;
    int pi_twice = 0;

    static SymbolicVolume sqrt_of(const Rational& q);

    SymbolicVolume operator*(const SymbolicVolume& o) const;
    SymbolicVolume operator/(const SymbolicVolume& o) const;
    // Only defined when radicand and pi power agree.
    SymbolicVolume operator+(const SymbolicVolume& o) const;
    bool operator==(const SymbolicVolume& o) const;

    Real value() const;
    std::string str() const;
};

// Code-structured description used for fast norm counting. In coordinates z
// with true vector = z / sqrt(8):
//  construction A:  z = 2y, y mod 2 in code;
//  Leech twist:     z = 2y with y mod 2 in code and sum(y) = 0 mod 4, or
//                   z = w + 2y with sum(y) = 2 mod 4, w = 2^{(3-s)/2} (1,...,1).
struct CodeStructure {
    BinaryCode code;
    bool leech_twist = false;
    int shift_exponent = 0;
};

struct LatticeDescription {
    std::string name;
    int dimension = 0;
    int scale_exponent = 0;  // true basis = scaled_basis * 2^{-s/2}
    IntMatrix scaled_basis;
    RatMatrix gram;
    std::optional<CodeStructure> structure;
    nlohmann::json metadata = nlohmann::json::object();
};

struct NormCountTable {
    std::map<Rational, BigInt> counts;
    Rational max_norm;
    BigInt count_at(const Rational& norm) const;
    std::string csv() const;
};

struct LatticeProperties {
    bool integral = false;
    bool even = false;
    bool unimodular = false;
    Rational min_sq_norm;
    BigInt kissing;
};

struct EnumerationOptions {
    // Maximum number of enumeration tree nodes for generic lattices.
    std::uint64_t budget = 200'000'000;
};

// Builds a lattice from an (integer) generating set; rows are reduced to a basis.
LatticeDescription make_lattice(std::string name, const IntMatrix& generators, int scale_exponent);

LatticeDescription construction_a(const BinaryCode& code);
LatticeDescription zn(int n);
LatticeDescription e8();
LatticeDescription l24();
LatticeDescription leech();
// Candidate twisted lattice for a given coset shift exponent; throws
// ValidationError naming the failed invariant.
LatticeDescription leech_candidate(int shift_exponent);
LatticeDescription standard_lattice(const std::string& name);

Rational gram_determinant(const RatMatrix& gram);
SymbolicVolume covolume(const LatticeDescription& lat);
LatticeDescription dual_lattice(const LatticeDescription& lat);
NormCountTable vectors_by_norm(const LatticeDescription& lat, const Rational& max_sq_norm,
                               const EnumerationOptions& opt = {});
SymbolicVolume ball_volume(int n, const Rational& sq_radius);
SymbolicVolume density(const LatticeDescription& lat);
LatticeProperties lattice_properties(const LatticeDescription& lat, const EnumerationOptions& opt = {});

// Hermite-style integer row reduction; returns the nonzero rows of the echelon form.
IntMatrix integer_row_reduce(IntMatrix rows);

nlohmann::json to_json(const LatticeDescription& lat);
LatticeDescription lattice_from_json(const nlohmann::json& j);

} // namespace spherepack
