#include "test_main.hpp"

#include "spherepack/codes.hpp"
#include "spherepack/lattices.hpp"
#include "spherepack/numeric.hpp"

#include <bit>
#include <random>

using namespace spherepack;

TEST_CASE("hamming8 matches the printed matrix") {
    auto h = hamming8();
    CHECK(h.length() == 8);
    CHECK(h.dimension() == 4);
    CHECK(h.row_string(0) == "10000111");
    CHECK(h.row_string(3) == "00011110");
    CHECK(h.codewords().size() == 16);
}

TEST_CASE("golay24 matches the printed matrix") {
    auto g = golay24();
    CHECK(g.dimension() == 12);
    CHECK(g.row_string(0) == "100000000000100000111111");
    CHECK(g.row_string(11) == "000000000001111111000001");
    CHECK(minimum_weight(g) == 8);
}

TEST_CASE("weight enumerators") {
    auto h = weight_enumerator(hamming8());
    CHECK(h.counts == std::map<int, std::uint64_t>{{0, 1}, {4, 14}, {8, 1}});
    auto z = weight_enumerator(BinaryCode::zero(5));
    CHECK(z.counts == std::map<int, std::uint64_t>{{0, 1}});
    // Full enumeration; the weight-20 count stated in the prose does not occur.
    auto g = weight_enumerator(golay24());
    CHECK(g.counts == std::map<int, std::uint64_t>{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}});
}

TEST_CASE("dual codes") {
    CHECK(same_codewords(dual_code(hamming8()), hamming8()));
    CHECK(same_codewords(dual_code(golay24()), golay24()));
    auto full = dual_code(BinaryCode::zero(6));
    CHECK(full.dimension() == 6);
    CHECK(full.codewords().size() == 64);
}

TEST_CASE("code properties") {
    auto ph = code_properties(hamming8());
    CHECK(ph.self_dual);
    CHECK(ph.doubly_even);
    auto pg = code_properties(golay24());
    CHECK(pg.self_dual);
    CHECK(pg.doubly_even);
    auto p2 = code_properties(BinaryCode::from_rows({"11"}));
    CHECK(p2.self_dual);
    CHECK_FALSE(p2.doubly_even);
}

TEST_CASE("generators are self-orthogonal") {
    for (auto code : {hamming8(), golay24()})
        for (auto a : code.generator())
            for (auto b : code.generator()) CHECK(std::popcount(a & b) % 2 == 0);
}

TEST_CASE("invalid generators are rejected") {
    CHECK_THROWS_AS(BinaryCode::from_rows({"1100", "1100"}), InvalidArgument);
    CHECK_THROWS_AS(BinaryCode::from_rows({"1102"}), InvalidArgument);
    CHECK_THROWS_AS(BinaryCode::from_rows({"110", "11"}), InvalidArgument);
}

TEST_CASE("json round trip") {
    auto g = golay24();
    auto j = to_json(g);
    CHECK(j["dimension"] == 12);
    CHECK(same_codewords(code_from_json(j), g));
}

TEST_CASE("random codes: census sums to 2^k and double dual is the code") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 20);
        int k = static_cast<int>(rng() % (n + 1));
        std::vector<std::uint64_t> rows;
        while (static_cast<int>(rows.size()) < k) {
            auto cand = rows;
            cand.push_back(rng() & ((1ULL << n) - 1));
            if (gf2_rank(cand) == static_cast<int>(cand.size())) rows = cand;
        }
        BinaryCode c(n, rows);
        auto we = weight_enumerator(c);
        CHECK(we.total() == (1ULL << k));
        CHECK(we.counts.at(0) == 1);
        auto dd = dual_code(dual_code(c));
        CHECK(same_codewords(dd, c));
        CHECK(dual_code(c).dimension() == n - k);
    }
}

TEST_CASE("doubly even self-dual codes give even unimodular Construction A lattices") {
    for (auto code : {hamming8(), golay24()}) {
        auto p = code_properties(code);
        REQUIRE(p.self_dual);
        REQUIRE(p.doubly_even);
        auto lp = lattice_properties(construction_a(code));
        CHECK(lp.even);
        CHECK(lp.unimodular);
    }
}
