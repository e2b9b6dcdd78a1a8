#pragma once

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spherepack {

// Binary linear code of length <= 64. Bit i of a word is coordinate i,
// i.e. the i-th character of the printed row.
class BinaryCode {
public:
    BinaryCode() = default;
    // Rows must be linearly independent; throws InvalidArgument otherwise.
    BinaryCode(int length, std::vector<std::uint64_t> generator);
    static BinaryCode from_rows(const std::vector<std::string>& rows);
    static BinaryCode zero(int length);

    int length() const { return length_; }
    int dimension() const { return static_cast<int>(generator_.size()); }
    const std::vector<std::uint64_t>& generator() const { return generator_; }
    std::string row_string(int i) const;

    // All 2^k codewords in Gray-code order; k <= max_enumerable_dimension.
    std::vector<std::uint64_t> codewords() const;
    bool contains(std::uint64_t word) const;

    static constexpr int max_enumerable_dimension = 24;

private:
    int length_ = 0;
    std::vector<std::uint64_t> generator_;
};

struct WeightEnumerator {
    std::map<int, std::uint64_t> counts;
    std::uint64_t total() const;
};

struct CodeProperties {
    bool self_dual = false;
    bool doubly_even = false;
};

BinaryCode hamming8();
BinaryCode golay24();

WeightEnumerator weight_enumerator(const BinaryCode& code);
BinaryCode dual_code(const BinaryCode& code);
CodeProperties code_properties(const BinaryCode& code);
int minimum_weight(const BinaryCode& code);
bool same_codewords(const BinaryCode& a, const BinaryCode& b);

// Rank over GF(2) of a list of words.
int gf2_rank(std::vector<std::uint64_t> rows);

nlohmann::json to_json(const BinaryCode& code);
BinaryCode code_from_json(const nlohmann::json& j);

} // namespace spherepack
