#include "bitfrac/reference_sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitfrac {

namespace {

// A value in flight through the array, tagged with its stream index so the
// schedule can be checked, not assumed.
struct Flit {
  std::int64_t value = 0;
  std::int64_t index = -1;
  bool valid = false;
};

using FlitGrid = std::vector<std::vector<Flit>>;

FlitGrid make_grid(std::int64_t r, std::int64_t c) {
  return FlitGrid(static_cast<size_t>(r),
                  std::vector<Flit>(static_cast<size_t>(c)));
}

void check_shapes(const MatMulOp& op, const Matrix& a, const Matrix& b) {
  if (op.m < 1 || op.k < 1 || op.n < 1) {
    throw std::domain_error("op dimensions must be >= 1");
  }
  if (std::ssize(a) != op.m || std::ssize(a[0]) != op.k ||
      std::ssize(b) != op.k || std::ssize(b[0]) != op.n) {
    throw std::invalid_argument("operand shapes do not match op");
  }
}

struct SimState {
  Matrix result;
  std::int64_t cycles = 0;
  std::int64_t macs = 0;
};

// OS fold over output tile [m0, m0+r) x [n0, n0+c): matrix rows stream from
// the west (row i delayed i cycles), vector/matrix columns from the north
// (column j delayed j cycles); PE(i, j) accumulates output (i, j) in place,
// then accumulators drain row-sequentially.
void run_fold_os(const MatMulOp& op, const Matrix& a, const Matrix& b,
                 std::int64_t m0, std::int64_t r, std::int64_t n0,
                 std::int64_t c, SimState& st) {
  auto a_reg = make_grid(r, c);
  auto b_reg = make_grid(r, c);
  Matrix acc(static_cast<size_t>(r),
             std::vector<std::int64_t>(static_cast<size_t>(c), 0));
  const std::int64_t last = (r - 1) + (c - 1) + (op.k - 1);
  for (std::int64_t t = 0; t <= last; ++t) {
    for (std::int64_t i = 0; i < r; ++i) {
      for (std::int64_t j = c - 1; j > 0; --j) a_reg[i][j] = a_reg[i][j - 1];
      const std::int64_t s = t - i;
      a_reg[i][0] = (s >= 0 && s < op.k) ? Flit{a[m0 + i][s], s, true} : Flit{};
    }
    for (std::int64_t j = 0; j < c; ++j) {
      for (std::int64_t i = r - 1; i > 0; --i) b_reg[i][j] = b_reg[i - 1][j];
      const std::int64_t s = t - j;
      b_reg[0][j] = (s >= 0 && s < op.k) ? Flit{b[s][n0 + j], s, true} : Flit{};
    }
    for (std::int64_t i = 0; i < r; ++i) {
      for (std::int64_t j = 0; j < c; ++j) {
        if (a_reg[i][j].valid && b_reg[i][j].valid) {
          if (a_reg[i][j].index != b_reg[i][j].index) {
            throw std::logic_error("OS schedule desync");
          }
          acc[i][j] += a_reg[i][j].value * b_reg[i][j].value;
          ++st.macs;
        }
      }
    }
  }
  st.cycles += last + 1 + r;  // compute phase + row-sequential drain
  for (std::int64_t i = 0; i < r; ++i) {
    for (std::int64_t j = 0; j < c; ++j) st.result[m0 + i][n0 + j] = acc[i][j];
  }
}

// WS fold: B tile [k0, k0+r) x [n0, n0+c) preloaded into the PEs (r cycles);
// the m input rows stream west-to-east with row skew, partial sums flow
// south and exit at the bottom row.
void run_fold_ws(const MatMulOp& op, const Matrix& a, const Matrix& b,
                 std::int64_t k0, std::int64_t r, std::int64_t n0,
                 std::int64_t c, SimState& st) {
  auto a_reg = make_grid(r, c);
  auto psum = make_grid(r, c);
  const std::int64_t last = (op.m - 1) + (r - 1) + (c - 1);
  for (std::int64_t t = 0; t <= last; ++t) {
    auto psum_prev = psum;
    for (std::int64_t i = 0; i < r; ++i) {
      for (std::int64_t j = c - 1; j > 0; --j) a_reg[i][j] = a_reg[i][j - 1];
      const std::int64_t s = t - i;
      a_reg[i][0] =
          (s >= 0 && s < op.m) ? Flit{a[s][k0 + i], s, true} : Flit{};
    }
    for (std::int64_t i = 0; i < r; ++i) {
      for (std::int64_t j = 0; j < c; ++j) {
        if (!a_reg[i][j].valid) {
          psum[i][j] = Flit{};
          continue;
        }
        const std::int64_t s = a_reg[i][j].index;
        std::int64_t partial = 0;
        if (i > 0) {
          if (!psum_prev[i - 1][j].valid || psum_prev[i - 1][j].index != s) {
            throw std::logic_error("WS schedule desync");
          }
          partial = psum_prev[i - 1][j].value;
        }
        partial += a_reg[i][j].value * b[k0 + i][n0 + j];
        ++st.macs;
        psum[i][j] = Flit{partial, s, true};
        if (i == r - 1) st.result[s][n0 + j] += partial;
      }
    }
  }
  st.cycles += r + last + 1;  // preload + streaming phase
}

// IS fold: A tile [m0, m0+r) x [k0, k0+c) preloaded (c cycles); the n
// operand columns stream north-to-south with column skew, partial sums flow
// east and exit at the rightmost column.
void run_fold_is(const MatMulOp& op, const Matrix& a, const Matrix& b,
                 std::int64_t m0, std::int64_t r, std::int64_t k0,
                 std::int64_t c, SimState& st) {
  auto b_reg = make_grid(r, c);
  auto psum = make_grid(r, c);
  const std::int64_t last = (op.n - 1) + (r - 1) + (c - 1);
  for (std::int64_t t = 0; t <= last; ++t) {
    auto psum_prev = psum;
    for (std::int64_t j = 0; j < c; ++j) {
      for (std::int64_t i = r - 1; i > 0; --i) b_reg[i][j] = b_reg[i - 1][j];
      const std::int64_t s = t - j;
      b_reg[0][j] =
          (s >= 0 && s < op.n) ? Flit{b[k0 + j][s], s, true} : Flit{};
    }
    for (std::int64_t i = 0; i < r; ++i) {
      for (std::int64_t j = 0; j < c; ++j) {
        if (!b_reg[i][j].valid) {
          psum[i][j] = Flit{};
          continue;
        }
        const std::int64_t s = b_reg[i][j].index;
        std::int64_t partial = 0;
        if (j > 0) {
          if (!psum_prev[i][j - 1].valid || psum_prev[i][j - 1].index != s) {
            throw std::logic_error("IS schedule desync");
          }
          partial = psum_prev[i][j - 1].value;
        }
        partial += a[m0 + i][k0 + j] * b_reg[i][j].value;
        ++st.macs;
        psum[i][j] = Flit{partial, s, true};
        if (j == c - 1) st.result[m0 + i][s] += partial;
      }
    }
  }
  st.cycles += c + last + 1;  // preload + streaming phase
}

}  // namespace

Matrix matmul_reference(const Matrix& a, const Matrix& b) {
  const auto m = std::ssize(a);
  const auto k = std::ssize(b);
  const auto n = std::ssize(b[0]);
  Matrix out(static_cast<size_t>(m),
             std::vector<std::int64_t>(static_cast<size_t>(n), 0));
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t kk = 0; kk < k; ++kk) {
      for (std::int64_t j = 0; j < n; ++j) {
        out[i][j] += a[i][kk] * b[kk][j];
      }
    }
  }
  return out;
}

SimOutput simulate(const MatMulOp& op, const Matrix& a, const Matrix& b,
                   const HardwareConfig& hw) {
  check_shapes(op, a, b);
  hw.validate();
  if (op.m > kSimMaxMK || op.k > kSimMaxMK || op.n > kSimMaxN ||
      hw.rows > kSimMaxArray || hw.cols > kSimMaxArray) {
    throw std::length_error("shape exceeds oracle scale limits");
  }

  SimState st;
  st.result.assign(static_cast<size_t>(op.m),
                   std::vector<std::int64_t>(static_cast<size_t>(op.n), 0));
  const auto for_tiles = [&](std::int64_t da, std::int64_t ra, std::int64_t db,
                             std::int64_t rb, auto fold) {
    for (std::int64_t a0 = 0; a0 < da; a0 += ra) {
      for (std::int64_t b0 = 0; b0 < db; b0 += rb) {
        fold(a0, std::min(ra, da - a0), b0, std::min(rb, db - b0));
      }
    }
  };
  switch (hw.dataflow) {
    case Dataflow::OS:
      for_tiles(op.m, hw.rows, op.n, hw.cols,
                [&](std::int64_t m0, std::int64_t r, std::int64_t n0,
                    std::int64_t c) { run_fold_os(op, a, b, m0, r, n0, c, st); });
      break;
    case Dataflow::WS:
      for_tiles(op.k, hw.rows, op.n, hw.cols,
                [&](std::int64_t k0, std::int64_t r, std::int64_t n0,
                    std::int64_t c) { run_fold_ws(op, a, b, k0, r, n0, c, st); });
      break;
    case Dataflow::IS:
      for_tiles(op.m, hw.rows, op.k, hw.cols,
                [&](std::int64_t m0, std::int64_t r, std::int64_t k0,
                    std::int64_t c) { run_fold_is(op, a, b, m0, r, k0, c, st); });
      break;
  }
  return {std::move(st.result), st.cycles, st.macs};
}

}  // namespace bitfrac
