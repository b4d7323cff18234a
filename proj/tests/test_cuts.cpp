#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "lincomp/cuts.hpp"
#include "support/oracles.hpp"

using namespace lincomp;

namespace {

Network load_net(const std::string& name) {
  std::ifstream in(std::string(LINCOMP_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

}  // namespace

TEST_CASE("separated sources on N1") {
  const auto net = load_net("n1.json");
  CHECK(separated_sources(net, {2, 3}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(separated_sources(net, {}).empty());
  CHECK(separated_sources(net, {2}) == std::vector<std::size_t>{0});
}

TEST_CASE("N1 with T1 has ratio one at the receiver cut") {
  const auto net = load_net("n1.json");
  const auto t1 = TargetMatrix::from_rows(2, {{1, 0, 1}, {0, 1, 0}});
  const auto r = mincut_ratio(net, t1);
  CHECK(r.value == Ratio{1, 1});
  CHECK(r.witness == std::vector<EdgeId>{2, 3});
  CHECK(check_necessary(net, t1));
}

TEST_CASE("star and shared-edge networks") {
  const auto star = load_net("star3.json");
  const auto id3 = TargetMatrix::from_rows(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(mincut_ratio(star, id3).value == Ratio{1, 1});
  const auto shared = load_net("shared.json");
  const auto id2 = TargetMatrix::from_rows(2, {{1, 0}, {0, 1}});
  const auto r = mincut_ratio(shared, id2);
  CHECK(r.value == Ratio{1, 2});
  CHECK(r.witness.size() == 1);
  CHECK_FALSE(check_necessary(shared, id2));
}

TEST_CASE("single source is always fine") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    const auto net = oracle::random_network(rng, 1, 10, 2);
    CHECK(check_necessary(net, TargetMatrix::from_rows(2, {{1}})));
  }
}

TEST_CASE("dimension mismatch") {
  const auto net = load_net("n1.json");
  CHECK_THROWS_AS(mincut_ratio(net, TargetMatrix::from_rows(2, {{1, 1}})), Error);
}

TEST_CASE("max-flow value matches brute force on random networks") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 120; ++i) {
    const std::uint32_t q = i % 3 == 0 ? 3 : 2;
    const std::size_t s = 1 + i % 4;
    const auto net = oracle::random_network(rng, s, 12, q);
    std::uniform_int_distribution<std::uint32_t> coin(0, q - 1);
    const std::size_t l = 1 + rng() % s;
    oracle::Rows rows;
    do {
      rows.assign(l, std::vector<std::uint32_t>(s));
      for (auto& r : rows)
        for (auto& x : r) x = coin(rng);
      bool zero_col = false;
      for (std::size_t j = 0; j < s; ++j) {
        bool nz = false;
        for (auto& r : rows) nz = nz || r[j];
        zero_col = zero_col || !nz;
      }
      if (!zero_col && oracle::rank_mod(rows, q) == l) break;
    } while (true);
    const auto t = TargetMatrix::from_rows(q, rows);
    const auto got = mincut_ratio(net, t);
    const auto want = oracle::brute_mincut(net, rows, q);
    REQUIRE(got.value == Ratio{want.first, want.second});
    // the witness really is a cut achieving the value
    const auto sep = separated_sources(net, got.witness);
    REQUIRE(sep == got.separated);
    REQUIRE(got.value == Ratio::of(got.witness.size(), t.rank_of(sep)));
  }
}
