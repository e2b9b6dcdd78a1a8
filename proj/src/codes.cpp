#include "spherepack/codes.hpp"

#include "spherepack/numeric.hpp"

#include <algorithm>
#include <bit>

namespace spherepack {

namespace {

std::uint64_t mask(int n) { return n == 64 ? ~0ULL : ((1ULL << n) - 1); }

// Reduced row echelon form over GF(2); returns pivot columns.
std::vector<int> rref(std::vector<std::uint64_t>& rows, int n) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < n && r < rows.size(); ++c) {
        std::uint64_t bit = 1ULL << c;
        std::size_t p = r;
        while (p < rows.size() && !(rows[p] & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

} // namespace

int gf2_rank(std::vector<std::uint64_t> rows) {
    return static_cast<int>(rref(rows, 64).size());
}

BinaryCode::BinaryCode(int length, std::vector<std::uint64_t> generator)
    : length_(length), generator_(std::move(generator)) {
    if (length < 1 || length > 64) throw InvalidArgument("code length must be in 1..64");
    if (static_cast<int>(generator_.size()) > length)
        throw InvalidArgument("code dimension exceeds length");
    for (auto w : generator_)
        if (w & ~mask(length)) throw InvalidArgument("generator row has bits beyond the code length");
    if (gf2_rank(generator_) != static_cast<int>(generator_.size()))
        throw InvalidArgument("generator rows are linearly dependent over GF(2)");
}

BinaryCode BinaryCode::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw InvalidArgument("from_rows needs at least one row; use BinaryCode::zero");
    int n = -1;
    std::vector<std::uint64_t> gen;
    for (const auto& raw : rows) {
        std::string row;
        for (char ch : raw)
            if (ch != ' ' && ch != '|') row.push_back(ch);
        if (n < 0) n = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != n) throw InvalidArgument("rows of unequal length");
        std::uint64_t w = 0;
        for (int i = 0; i < n; ++i) {
            if (row[i] == '1') w |= 1ULL << i;
            else if (row[i] != '0') throw InvalidArgument("row contains a character other than 0/1");
        }
        gen.push_back(w);
    }
    return BinaryCode(n, std::move(gen));
}

BinaryCode BinaryCode::zero(int length) { return BinaryCode(length, {}); }

std::string BinaryCode::row_string(int i) const {
    std::string s(length_, '0');
    for (int c = 0; c < length_; ++c)
        if (generator_.at(i) >> c & 1ULL) s[c] = '1';
    return s;
}

std::vector<std::uint64_t> BinaryCode::codewords() const {
    int k = dimension();
    if (k > max_enumerable_dimension) throw InvalidArgument("code dimension too large to enumerate");
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << k);
    std::uint64_t w = 0;
    out.push_back(0);
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << k); ++g) {
        w ^= generator_[std::countr_zero(g)];
        out.push_back(w);
    }
    return out;
}

bool BinaryCode::contains(std::uint64_t word) const {
    auto rows = generator_;
    rows.push_back(word);
    return gf2_rank(rows) == dimension();
}

std::uint64_t WeightEnumerator::total() const {
    std::uint64_t t = 0;
    for (auto [w, c] : counts) t += c;
    return t;
}

BinaryCode hamming8() {
    return BinaryCode::from_rows({"1000 0111", "0100 1011", "0010 1101", "0001 1110"});
}

BinaryCode golay24() {
    static const char* b_rows[12] = {
        "100000111111", "010110001111", "001011100111", "010101110011",
        "011010111001", "001101011101", "101110101100", "100111010110",
        "110011101010", "111001110100", "111100011010", "111111000001"};
    std::vector<std::string> rows;
    for (int i = 0; i < 12; ++i) {
        std::string id(12, '0');
        id[i] = '1';
        rows.push_back(id + b_rows[i]);
    }
    return BinaryCode::from_rows(rows);
}

WeightEnumerator weight_enumerator(const BinaryCode& code) {
    WeightEnumerator we;
    for (auto w : code.codewords()) ++we.counts[std::popcount(w)];
    return we;
}

BinaryCode dual_code(const BinaryCode& code) {
    int n = code.length();
    auto rows = code.generator();
    auto pivots = rref(rows, n);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    // For each free column f: y_f = 1, y_p = (row with pivot p)_f.
    std::vector<std::uint64_t> dual;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::uint64_t y = 1ULL << f;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (rows[r] >> f & 1ULL) y |= 1ULL << pivots[r];
        dual.push_back(y);
    }
    return BinaryCode(n, std::move(dual));
}

bool same_codewords(const BinaryCode& a, const BinaryCode& b) {
    if (a.length() != b.length() || a.dimension() != b.dimension()) return false;
    for (auto g : b.generator())
        if (!a.contains(g)) return false;
    return true;
}

CodeProperties code_properties(const BinaryCode& code) {
    CodeProperties p;
    p.self_dual = same_codewords(code, dual_code(code));
    p.doubly_even = true;
    for (auto w : code.codewords())
        if (std::popcount(w) % 4 != 0) {
            p.doubly_even = false;
            break;
        }
    return p;
}

int minimum_weight(const BinaryCode& code) {
    int best = code.length() + 1;
    for (auto w : code.codewords())
        if (w) best = std::min(best, std::popcount(w));
    return best > code.length() ? 0 : best;
}

nlohmann::json to_json(const BinaryCode& code) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < code.dimension(); ++i) rows.push_back(code.row_string(i));
    return {{"length", code.length()}, {"dimension", code.dimension()}, {"generator", rows}};
}

BinaryCode code_from_json(const nlohmann::json& j) {
    int n = j.at("length").get<int>();
    std::vector<std::string> rows = j.at("generator").get<std::vector<std::string>>();
    if (rows.empty()) return BinaryCode::zero(n);
    auto c = BinaryCode::from_rows(rows);
    if (c.length() != n) throw InvalidArgument("generator row length disagrees with 'length'");
    if (j.contains("dimension") && j.at("dimension").get<int>() != c.dimension())
        throw InvalidArgument("'dimension' disagrees with the generator");
    return c;
}

} // namespace spherepack
