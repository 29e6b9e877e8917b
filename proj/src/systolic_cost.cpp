#include "bitfrac/systolic_cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "bitfrac/config_file.hpp"

namespace bitfrac {

namespace {

constexpr std::int64_t kMiB = 1024 * 1024;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

void check_op(const MatMulOp& op) {
  if (op.m < 1 || op.k < 1 || op.n < 1) {
    throw std::domain_error("op dimensions must be >= 1");
  }
}

// Walks the fold tiling of `a` rows over `ra` and `b` over `rb`, summing
// per-fold cycles produced by `fold_cycles(tile_a, tile_b)`.
template <typename F>
OpCost sum_folds(const MatMulOp& op, const HardwareConfig& hw, std::int64_t a,
                 std::int64_t ra, std::int64_t b, std::int64_t rb,
                 F fold_cycles) {
  check_op(op);
  hw.validate();
  OpCost out;
  out.mac_count = op.mac_count();
  for (std::int64_t a0 = 0; a0 < a; a0 += ra) {
    const std::int64_t ta = std::min(ra, a - a0);
    for (std::int64_t b0 = 0; b0 < b; b0 += rb) {
      const std::int64_t tb = std::min(rb, b - b0);
      out.compute_cycles += fold_cycles(ta, tb);
      ++out.folds;
    }
  }
  out.utilization = static_cast<double>(out.mac_count) /
                    (static_cast<double>(out.compute_cycles) *
                     static_cast<double>(hw.rows) *
                     static_cast<double>(hw.cols));
  return out;
}

}  // namespace

const char* to_string(Dataflow df) {
  switch (df) {
    case Dataflow::OS: return "OS";
    case Dataflow::WS: return "WS";
    case Dataflow::IS: return "IS";
  }
  return "?";
}

Dataflow parse_dataflow(const std::string& s) {
  if (s == "OS" || s == "os") return Dataflow::OS;
  if (s == "WS" || s == "ws") return Dataflow::WS;
  if (s == "IS" || s == "is") return Dataflow::IS;
  throw std::invalid_argument("unknown dataflow: " + s);
}

void HardwareConfig::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("hardware '" + name + "': array must be >= 1x1");
  }
  if (sram_input_bytes <= 0 || sram_output_bytes <= 0 ||
      sram_weight_bytes <= 0) {
    throw std::invalid_argument("hardware '" + name +
                                "': SRAM capacities must be positive");
  }
  if (element_bytes != 1 && element_bytes != 2 && element_bytes != 4) {
    throw std::invalid_argument("hardware '" + name +
                                "': element_bytes must be 1, 2, or 4");
  }
}

const std::vector<HardwareConfig>& builtin_hardware() {
  static const std::vector<HardwareConfig> hw = {
      {"cloud", 256, 256, Dataflow::OS, 4 * kMiB, 4 * kMiB, 8 * kMiB, 2},
      {"edge", 32, 32, Dataflow::OS, 2 * kMiB, 2 * kMiB, 4 * kMiB, 2},
  };
  return hw;
}

const HardwareConfig& find_hardware(const std::string& name) {
  for (const auto& h : builtin_hardware()) {
    if (h.name == name) return h;
  }
  throw std::out_of_range("unknown hardware: " + name);
}

OpCost cost_os(const MatMulOp& op, const HardwareConfig& hw) {
  // m -> rows, n -> cols; skewed fill (r-1)+(c-1), k accumulation steps,
  // r drain steps.
  return sum_folds(op, hw, op.m, hw.rows, op.n, hw.cols,
                   [&](std::int64_t r, std::int64_t c) {
                     return 2 * r + c + op.k - 2;
                   });
}

OpCost cost_ws(const MatMulOp& op, const HardwareConfig& hw) {
  // k -> rows, n -> cols; r preload cycles, then m streamed rows.
  return sum_folds(op, hw, op.k, hw.rows, op.n, hw.cols,
                   [&](std::int64_t r, std::int64_t c) {
                     return r + op.m + r + c - 2;
                   });
}

OpCost cost_is(const MatMulOp& op, const HardwareConfig& hw) {
  // m -> rows, k -> cols; c preload cycles, then n streamed columns.
  return sum_folds(op, hw, op.m, hw.rows, op.k, hw.cols,
                   [&](std::int64_t r, std::int64_t c) {
                     return c + op.n + r + c - 2;
                   });
}

OpCost cost(const MatMulOp& op, const HardwareConfig& hw) {
  switch (hw.dataflow) {
    case Dataflow::OS: return cost_os(op, hw);
    case Dataflow::WS: return cost_ws(op, hw);
    case Dataflow::IS: return cost_is(op, hw);
  }
  throw std::invalid_argument("bad dataflow");
}

HardwareConfig load_hardware_config(const std::string& path) {
  const auto kv = parse_config_file(path);
  HardwareConfig hw;
  hw.name = kv.count("name") ? config_str(kv, "name") : path;
  hw.rows = config_int(kv, "rows");
  hw.cols = config_int(kv, "cols");
  hw.dataflow = kv.count("dataflow") ? parse_dataflow(config_str(kv, "dataflow"))
                                     : Dataflow::OS;
  hw.sram_input_bytes = config_int(kv, "sram_input_bytes");
  hw.sram_output_bytes = config_int(kv, "sram_output_bytes");
  hw.sram_weight_bytes = config_int(kv, "sram_weight_bytes");
  hw.element_bytes = static_cast<int>(config_int_or(kv, "element_bytes", 2));
  hw.validate();
  return hw;
}

}  // namespace bitfrac
