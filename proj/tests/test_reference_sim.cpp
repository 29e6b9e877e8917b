#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bitfrac/reference_sim.hpp"

using namespace bitfrac;

namespace {

MatMulOp shape(std::int64_t m, std::int64_t k, std::int64_t n = 1) {
  return {OpRole::QProj, m, k, n, true, {}};
}

HardwareConfig array(std::int64_t r, std::int64_t c, Dataflow df) {
  return {"oracle", r, c, df, 1 << 20, 1 << 20, 1 << 20, 2};
}

Matrix random_matrix(std::int64_t rows, std::int64_t cols, std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> dist(-9, 9);
  Matrix m(rows, std::vector<std::int64_t>(cols));
  for (auto& row : m) {
    for (auto& v : row) v = dist(rng);
  }
  return m;
}

Matrix identity(std::int64_t n) {
  Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::int64_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

TEST_CASE("hand-checked 2x2 product on the OS grid") {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{1}, {1}};
  const auto out = simulate(shape(2, 2), a, b, array(2, 2, Dataflow::OS));
  CHECK(out.result == Matrix{{3}, {7}});
  CHECK(out.mac_events == 4);
}

TEST_CASE("cycles match the OS closed form on the 12-cycle example") {
  std::mt19937 rng(7);
  const Matrix a = random_matrix(4, 3, rng);
  const Matrix b = random_matrix(3, 1, rng);
  const auto out = simulate(shape(4, 3), a, b, array(2, 2, Dataflow::OS));
  CHECK(out.cycles == 12);
  CHECK(out.result == matmul_reference(a, b));
}

TEST_CASE("identity matrix passes the streamed vector through") {
  std::mt19937 rng(11);
  for (const Dataflow df : {Dataflow::OS, Dataflow::WS, Dataflow::IS}) {
    const Matrix b = random_matrix(6, 1, rng);
    const auto out = simulate(shape(6, 6), identity(6), b, array(4, 4, df));
    CHECK(out.result == b);
  }
}

TEST_CASE("sim agrees with the closed forms over a sampled shape grid") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::int64_t> mk(1, 8), nn(1, 4), rc(1, 4);
    const std::int64_t m = mk(rng), k = mk(rng), n = nn(rng);
    const Matrix a = random_matrix(m, k, rng);
    const Matrix b = random_matrix(k, n, rng);
    const Matrix expect = matmul_reference(a, b);
    for (const Dataflow df : {Dataflow::OS, Dataflow::WS, Dataflow::IS}) {
      const auto hw = array(rc(rng), rc(rng), df);
      const auto out = simulate(shape(m, k, n), a, b, hw);
      CAPTURE(m);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(out.result == expect);
      CHECK(out.mac_events == m * k * n);
      CHECK(out.cycles == cost(shape(m, k, n), hw).compute_cycles);
    }
  }
}

TEST_CASE("oracle scale limits") {
  std::mt19937 rng(3);
  const auto hw = array(4, 4, Dataflow::OS);
  const Matrix a = random_matrix(65, 2, rng);
  const Matrix b = random_matrix(2, 1, rng);
  CHECK_THROWS_AS(simulate(shape(65, 2), a, b, hw), std::length_error);
  CHECK_THROWS_AS(
      simulate(shape(4, 4, 4), random_matrix(4, 4, rng),
               random_matrix(4, 4, rng), array(17, 4, Dataflow::OS)),
      std::length_error);
}

TEST_CASE("operand shape mismatch is rejected") {
  std::mt19937 rng(5);
  CHECK_THROWS_AS(simulate(shape(3, 3), random_matrix(2, 3, rng),
                           random_matrix(3, 1, rng), array(2, 2, Dataflow::OS)),
                  std::invalid_argument);
}
