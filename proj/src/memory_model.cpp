#include "bitfrac/memory_model.hpp"

#include <stdexcept>

namespace bitfrac {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

}  // namespace

const char* to_string(TrafficMetric m) {
  return m == TrafficMetric::SramElements ? "sram_elements" : "dram_bytes";
}

TrafficMetric parse_traffic_metric(const std::string& s) {
  if (s == "sram" || s == "sram_elements") return TrafficMetric::SramElements;
  if (s == "dram" || s == "dram_bytes") return TrafficMetric::DramBytes;
  throw std::invalid_argument("unknown traffic metric: " + s);
}

TrafficResult traffic(const MatMulOp& op, const HardwareConfig& hw) {
  if (op.m < 1 || op.k < 1 || op.n < 1) {
    throw std::domain_error("op dimensions must be >= 1");
  }
  hw.validate();
  const std::int64_t fm = ceil_div(op.m, hw.rows);
  const std::int64_t fn = ceil_div(op.n, hw.cols);

  TrafficResult t;
  t.sram_reads_a = fn * op.m * op.k;  // stationary matrix re-read per col fold
  t.sram_reads_b = fm * op.k * op.n;  // streamed operand re-read per row fold
  t.sram_writes_out = op.m * op.n;

  const std::int64_t eb = hw.element_bytes;
  t.a_fits = op.m * op.k * eb <= hw.sram_weight_bytes;
  t.b_fits = op.k * op.n * eb <= hw.sram_input_bytes;
  t.out_fits = op.m * op.n * eb <= hw.sram_output_bytes;

  // Resident operands cost one cold load; oversized ones stream through with
  // no reuse, so every SRAM read is backed by a DRAM read.
  t.dram_reads = (t.a_fits ? op.m * op.k : t.sram_reads_a) +
                 (t.b_fits ? op.k * op.n : t.sram_reads_b);
  t.dram_writes = op.m * op.n;
  return t;
}

int bits_per_element(Precision p) {
  switch (p) {
    case Precision::FP16: return 16;
    case Precision::INT8: return 8;
    case Precision::Ternary: return 2;
    case Precision::Binary: return 1;
  }
  return 0;
}

const char* to_string(Precision p) {
  switch (p) {
    case Precision::FP16: return "fp16";
    case Precision::INT8: return "int8";
    case Precision::Ternary: return "ternary";
    case Precision::Binary: return "binary";
  }
  return "?";
}

Precision parse_precision(const std::string& s) {
  if (s == "fp16") return Precision::FP16;
  if (s == "int8") return Precision::INT8;
  if (s == "ternary") return Precision::Ternary;
  if (s == "binary") return Precision::Binary;
  throw std::invalid_argument("unknown precision: " + s);
}

std::int64_t weight_footprint(const ModelConfig& model, Precision precision) {
  model.validate();
  const std::int64_t elements =
      4 * model.d * model.d + 2 * model.d * model.d_ff;
  const std::int64_t bits = elements * bits_per_element(precision);
  return ceil_div(bits, 8);
}

}  // namespace bitfrac
