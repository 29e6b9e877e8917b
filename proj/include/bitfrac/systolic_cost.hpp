#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bitfrac/model_zoo.hpp"

namespace bitfrac {

enum class Dataflow { OS, WS, IS };

const char* to_string(Dataflow df);
Dataflow parse_dataflow(const std::string& s);  // throws std::invalid_argument

struct HardwareConfig {
  std::string name;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  Dataflow dataflow = Dataflow::OS;
  std::int64_t sram_input_bytes = 0;
  std::int64_t sram_output_bytes = 0;
  std::int64_t sram_weight_bytes = 0;
  int element_bytes = 2;

  void validate() const;  // throws std::invalid_argument
};

/// Stall-free cost of one op on one array; memory traffic is counted
/// separately by the memory model and never folded into cycles.
struct OpCost {
  std::int64_t compute_cycles = 0;
  std::int64_t folds = 0;
  std::int64_t mac_count = 0;
  double utilization = 0.0;  // mac_count / (cycles * rows * cols)
};

/// The "cloud" (256x256) and "edge" (32x32) configurations, both OS.
const std::vector<HardwareConfig>& builtin_hardware();

/// Lookup by name; throws std::out_of_range for unknown names.
const HardwareConfig& find_hardware(const std::string& name);

// Closed-form cycle models, one per dataflow. Tiles larger than the array
// are split into folds; each fold's cycle count covers skewed fill, the
// streaming phase, and drain. Zero-dimension ops throw std::domain_error.
//
// OS: outputs stay in PEs; m -> rows, n -> cols; per r x c fold with
//     reduction k: 2r + c + k - 2 cycles.
OpCost cost_os(const MatMulOp& op, const HardwareConfig& hw);
// WS: the k x n operand is preloaded; k -> rows, n -> cols; per fold with
//     streaming dimension m: r + m + r + c - 2 cycles.
OpCost cost_ws(const MatMulOp& op, const HardwareConfig& hw);
// IS: the m x k operand is preloaded; m -> rows, k -> cols; per fold with
//     streaming dimension n: c + n + r + c - 2 cycles.
OpCost cost_is(const MatMulOp& op, const HardwareConfig& hw);

/// Dispatch on hw.dataflow.
OpCost cost(const MatMulOp& op, const HardwareConfig& hw);

/// Loads a hardware config from a key = value config file.
HardwareConfig load_hardware_config(const std::string& path);

}  // namespace bitfrac
