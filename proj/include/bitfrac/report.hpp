#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bitfrac/amdahl.hpp"
#include "bitfrac/memory_model.hpp"
#include "bitfrac/model_zoo.hpp"
#include "bitfrac/systolic_cost.hpp"

namespace bitfrac {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Metric { Compute, Memory };
enum class Format { Csv, Json, Markdown };

const char* to_string(Metric m);
const char* to_string(Format f);
Metric parse_metric(const std::string& s);  // throws std::invalid_argument
Format parse_format(const std::string& s);

struct OpReportRow {
  MatMulOp op;
  OpCost cost;
  TrafficResult traffic;
  std::int64_t traffic_metric_value = 0;  // under the selected traffic metric
};

/// Per-block partition of cycles and memory accesses into quantizable
/// (projection) and non-quantizable (attention-head) shares.
struct FractionReport {
  std::string model;
  std::string hardware;
  std::int64_t seqlen = 0;
  Dataflow dataflow = Dataflow::OS;
  TrafficMetric traffic_metric = TrafficMetric::SramElements;
  std::int64_t cycles_quant = 0, cycles_total = 0;
  std::int64_t memory_quant = 0, memory_total = 0;
  double f_compute = 0.0;
  double f_memory = 0.0;
  std::vector<OpReportRow> per_op;
};

FractionReport analyze_block(const ModelConfig& model, std::int64_t l,
                             const HardwareConfig& hw,
                             TrafficMetric tm = TrafficMetric::SramElements);

struct SweepGrid {
  HardwareConfig hw;
  Metric metric = Metric::Compute;
  TrafficMetric traffic_metric = TrafficMetric::SramElements;
  std::vector<std::int64_t> seqlens;       // row labels
  std::vector<std::string> models;         // column labels
  std::vector<std::vector<double>> cells;  // cells[row][col], in (0,1)
  // Cells where f_memory < f_compute, surfaced as warnings (soft check).
  std::vector<std::string> warnings;
};

SweepGrid sweep(const std::vector<ModelConfig>& models,
                const std::vector<std::int64_t>& seqlens,
                const HardwareConfig& hw, Metric metric,
                TrafficMetric tm = TrafficMetric::SramElements);

inline const std::vector<std::int64_t>& default_sweep_seqlens() {
  static const std::vector<std::int64_t> v{128, 256, 512, 1024, 2048, 4096};
  return v;
}

// Serializers. CSV grids: header row of model names, first column seqlen,
// fractions with 4 decimals. JSON payloads are self-describing (hardware,
// dataflow, metric, tool version). Markdown renders a plain table.
std::string emit_grid(const SweepGrid& grid, Format format);
std::string emit_curves(const AmdahlCurvePair& curves,
                        const FractionReport& report, Metric metric,
                        Format format);
std::string emit_report(const FractionReport& report, Format format);

nlohmann::json grid_to_json(const SweepGrid& grid);
SweepGrid grid_from_json(const nlohmann::json& j);

/// Amdahl curves for a block analysis under the chosen metric
/// (f = f_compute or f_memory).
AmdahlCurvePair curves(const FractionReport& report, Metric metric, int s_max);

}  // namespace bitfrac
