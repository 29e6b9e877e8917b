#pragma once

#include <cstdint>
#include <string>

#include "bitfrac/model_zoo.hpp"
#include "bitfrac/systolic_cost.hpp"

namespace bitfrac {

/// SRAM/DRAM access counts for one op, in elements. A is the stationary-side
/// matrix (weights or KV, held in weight SRAM), B the streamed vector (input
/// SRAM), outputs go to output SRAM.
struct TrafficResult {
  std::int64_t sram_reads_a = 0;
  std::int64_t sram_reads_b = 0;
  std::int64_t sram_writes_out = 0;
  std::int64_t dram_reads = 0;
  std::int64_t dram_writes = 0;
  bool a_fits = false;
  bool b_fits = false;
  bool out_fits = false;

  std::int64_t sram_total() const {
    return sram_reads_a + sram_reads_b + sram_writes_out;
  }
  std::int64_t dram_total() const { return dram_reads + dram_writes; }
};

/// Which accesses the fraction metric counts.
enum class TrafficMetric { SramElements, DramBytes };

const char* to_string(TrafficMetric m);
TrafficMetric parse_traffic_metric(const std::string& s);

/// Access counts under the OS fold schedule: the stationary matrix is re-read
/// once per column fold, the streamed operand once per row fold. An operand
/// larger than its SRAM streams through (DRAM traffic = its read count);
/// otherwise it is cold-loaded once.
TrafficResult traffic(const MatMulOp& op, const HardwareConfig& hw);

enum class Precision { FP16, INT8, Ternary, Binary };

int bits_per_element(Precision p);
const char* to_string(Precision p);
Precision parse_precision(const std::string& s);  // throws std::invalid_argument

/// Projection weight bytes per decoder block (4d^2 + 2*d*d_ff elements at the
/// precision's bit width, rounded up to whole bytes).
std::int64_t weight_footprint(const ModelConfig& model, Precision precision);

}  // namespace bitfrac
