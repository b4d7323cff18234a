#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "lincomp/code.hpp"
#include "support/oracles.hpp"

using namespace lincomp;

namespace {

Network load_net(const std::string& name) {
  std::ifstream in(std::string(LINCOMP_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

// x_{1,e1}=x_{1,e2}=x_{1,e3}=x_{1,e4}=1, x_{e1,e3}=x_{e2,e4}=1, b: e3->row 0, e4->row 1.
LinearCode n1_code() {
  const auto f = ExtField::of_degree(2, 1);
  LinearCode c(f, 2);
  c.a[{1, 0}] = f.one();
  c.a[{1, 1}] = f.one();
  c.a[{0, 2}] = f.one();
  c.a[{2, 3}] = f.one();
  c.f[{0, 2}] = f.one();
  c.f[{1, 3}] = f.one();
  c.b[{2, 0}] = f.one();
  c.b[{3, 1}] = f.one();
  return c;
}

LinearCode random_code(std::mt19937_64& rng, const Network& net, const ExtField& f, std::size_t l) {
  LinearCode c(f, l);
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (EdgeId e : net.out_edges(net.source(tau))) c.a[{tau, e}] = f.random(rng);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    for (EdgeId n : net.out_edges(net.edge(e).head)) c.f[{e, n}] = f.random(rng);
  for (EdgeId e : net.in_edges(net.receiver()))
    for (std::size_t j = 0; j < l; ++j) c.b[{e, j}] = f.random(rng);
  return c;
}

}  // namespace

TEST_CASE("target matrix validation") {
  auto code_of = [](std::uint32_t q, oracle::Rows rows) {
    try {
      TargetMatrix::from_rows(q, rows);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Aborted;
  };
  CHECK(code_of(2, {{1, 0, 1}, {0, 1, 0}}) == Errc::Aborted);
  CHECK(code_of(2, {{1, 0}, {0, 1}, {1, 1}}) == Errc::ShapeMismatch);
  CHECK(code_of(2, {{1, 0, 0}, {0, 1, 0}}) == Errc::ZeroColumn);
  CHECK(code_of(2, {{1, 1}, {1, 1}}) == Errc::RankDeficient);
  CHECK(code_of(2, {{2, 1}}) == Errc::FieldMismatch);
  CHECK(code_of(4, {{1, 1}}) == Errc::NotPrime);
}

TEST_CASE("N1 coding matrices with all-ones code") {
  const auto net = load_net("n1.json");
  const auto f = ExtField::of_degree(2, 1);
  LinearCode c(f, 2);
  auto layout = layout_matrices(
      f, net, 2, [&](auto, auto) { return f.one(); }, [&](auto, auto) { return f.one(); },
      [&](auto, auto) { return f.one(); });
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!f.is_zero(layout.f(i, j))) {
        ++nonzero;
        CHECK(i < j);
      }
  CHECK(nonzero == 2);
  CHECK(f.is_zero(layout.f(0, 3)) == true);
  CHECK(!f.is_zero(layout.f(0, 2)));
  CHECK(!f.is_zero(layout.f(1, 3)));
}

TEST_CASE("N1 transfer matrix and simulation") {
  const auto net = load_net("n1.json");
  const auto code = n1_code();
  const auto& f = code.field;
  const auto m = transfer_matrix(net, code);
  const std::uint32_t want[3][2] = {{1, 0}, {1, 1}, {0, 1}};
  for (std::size_t tau = 0; tau < 3; ++tau)
    for (std::size_t j = 0; j < 2; ++j) CHECK(m(tau, j) == f.embed(want[tau][j]));
  const auto out = simulate(net, code, {f.one(), f.zero(), f.one()});
  CHECK(out == std::vector<Felem>{f.one(), f.one()});
  CHECK(simulate(net, code, {f.zero(), f.zero(), f.zero()}) == std::vector<Felem>{f.zero(), f.zero()});
  CHECK(is_solution(net, code, TargetMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}})));
  CHECK_FALSE(is_solution(net, code, TargetMatrix::from_rows(2, {{1, 0, 1}, {0, 1, 0}})));
  CHECK(exhaustive_check(net, code, TargetMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}})));
}

TEST_CASE("zero code is never a solution") {
  const auto net = load_net("n1.json");
  LinearCode zero(ExtField::of_degree(2, 1), 2);
  const auto m = transfer_matrix(net, zero);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) CHECK(zero.field.is_zero(m(i, j)));
  CHECK_FALSE(is_solution(net, zero, TargetMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}})));
}

TEST_CASE("transfer rows equal simulated unit responses") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const std::uint32_t q = i % 2 ? 3 : 2;
    const auto net = oracle::random_network(rng, 1 + i % 4, 12, q);
    const auto f = ExtField::of_degree(q, 1 + i % 3);
    const std::size_t l = 1 + i % net.source_count();
    const auto code = random_code(rng, net, f, l);
    const auto m = transfer_matrix(net, code);
    for (std::size_t tau = 0; tau < net.source_count(); ++tau) {
      std::vector<Felem> msg(net.source_count(), f.zero());
      msg[tau] = f.one();
      REQUIRE(simulate(net, code, msg) == m.row(tau));
    }
    // linearity in the messages
    std::vector<Felem> x, y, sum;
    for (std::size_t tau = 0; tau < net.source_count(); ++tau) {
      x.push_back(f.random(rng));
      y.push_back(f.random(rng));
      sum.push_back(f.add(x.back(), y.back()));
    }
    const auto ox = simulate(net, code, x), oy = simulate(net, code, y), os = simulate(net, code, sum);
    for (std::size_t j = 0; j < l; ++j) REQUIRE(os[j] == f.add(ox[j], oy[j]));
    if (f.n() == 1) {
      // independent propagation oracle on unit messages
      for (std::size_t tau = 0; tau < net.source_count(); ++tau) {
        std::vector<std::uint32_t> msg(net.source_count(), 0);
        msg[tau] = 1;
        const auto want = oracle::propagate(net, code, msg, q);
        for (std::size_t j = 0; j < l; ++j) REQUIRE(m(tau, j).coeffs[0] == want[j]);
      }
    }
  }
}

TEST_CASE("code consistency checks") {
  const auto net = load_net("n1.json");
  const auto f = ExtField::of_degree(2, 1);
  LinearCode bad(f, 2);
  bad.a[{0, 0}] = f.one();  // e1 leaves s2, not s1
  CHECK_THROWS_AS(check_code(net, bad), Error);
  LinearCode bad_f(f, 2);
  bad_f.f[{0, 3}] = f.one();
  CHECK_THROWS_AS(check_code(net, bad_f), Error);
  LinearCode bad_b(f, 2);
  bad_b.b[{0, 0}] = f.one();
  CHECK_THROWS_AS(check_code(net, bad_b), Error);
  LinearCode wrong_field(f, 2);
  wrong_field.a[{1, 0}] = Felem{{1, 0}};
  CHECK_THROWS_AS(check_code(net, wrong_field), Error);
  CHECK_THROWS_AS(simulate(net, n1_code(), {f.one()}), Error);
  CHECK_THROWS_AS(is_solution(net, n1_code(), TargetMatrix::from_rows(3, {{1, 1, 0}, {0, 1, 1}})), Error);
  CHECK_THROWS_AS(is_solution(net, n1_code(), TargetMatrix::from_rows(2, {{1, 1, 1}})), Error);
}

TEST_CASE("code and target files round trip") {
  std::mt19937_64 rng(8);
  const auto net = load_net("n1.json");
  const auto f = ExtField::of_degree(3, 2);
  const auto code = random_code(rng, net, f, 2);
  const auto again = code_from_json(nlohmann::json::parse(code_to_json(code).dump()));
  CHECK(transfer_matrix(net, again) == transfer_matrix(net, code));
  CHECK(again.field == code.field);
  const auto t = TargetMatrix::from_rows(3, {{1, 2, 0}, {0, 1, 1}});
  CHECK(target_from_json(target_to_json(t)) == t);
  CHECK_THROWS_AS(code_from_json(nlohmann::json::parse(R"({"field":{"q":2,"n":1,"modulus":[0,1]},"a":[[0,0]]})")), Error);
}
