#pragma once

#include <cstdint>
#include <vector>

#include "bitfrac/systolic_cost.hpp"

namespace bitfrac {

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Outcome of a cycle-level PE-grid simulation.
struct SimOutput {
  Matrix result;               // m x n product
  std::int64_t cycles = 0;     // until the last output leaves the array
  std::int64_t mac_events = 0; // must equal m*k*n
};

// Oracle scale limits; simulate() throws std::length_error beyond them.
inline constexpr std::int64_t kSimMaxMK = 64;
inline constexpr std::int64_t kSimMaxN = 16;
inline constexpr std::int64_t kSimMaxArray = 16;

/// Simulates (m x k) * (k x n) with concrete integer operands on the PE grid
/// under hw.dataflow, propagating operands one PE per cycle with the skewed
/// injection schedule (row i delayed i cycles, column j delayed j cycles).
/// Integer operands keep result equality exact.
SimOutput simulate(const MatMulOp& op, const Matrix& a, const Matrix& b,
                   const HardwareConfig& hw);

/// Plain triple-loop product, the numeric reference.
Matrix matmul_reference(const Matrix& a, const Matrix& b);

}  // namespace bitfrac
