#include "bitfrac/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bitfrac {

namespace {

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

std::int64_t traffic_value(const TrafficResult& t, TrafficMetric tm,
                           int element_bytes) {
  if (tm == TrafficMetric::SramElements) return t.sram_total();
  return t.dram_total() * element_bytes;
}

nlohmann::json hw_to_json(const HardwareConfig& hw) {
  return {{"name", hw.name},
          {"rows", hw.rows},
          {"cols", hw.cols},
          {"dataflow", to_string(hw.dataflow)},
          {"sram_input_bytes", hw.sram_input_bytes},
          {"sram_output_bytes", hw.sram_output_bytes},
          {"sram_weight_bytes", hw.sram_weight_bytes},
          {"element_bytes", hw.element_bytes}};
}

HardwareConfig hw_from_json(const nlohmann::json& j) {
  HardwareConfig hw;
  hw.name = j.at("name").get<std::string>();
  hw.rows = j.at("rows").get<std::int64_t>();
  hw.cols = j.at("cols").get<std::int64_t>();
  hw.dataflow = parse_dataflow(j.at("dataflow").get<std::string>());
  hw.sram_input_bytes = j.at("sram_input_bytes").get<std::int64_t>();
  hw.sram_output_bytes = j.at("sram_output_bytes").get<std::int64_t>();
  hw.sram_weight_bytes = j.at("sram_weight_bytes").get<std::int64_t>();
  hw.element_bytes = j.at("element_bytes").get<int>();
  return hw;
}

}  // namespace

const char* to_string(Metric m) {
  return m == Metric::Compute ? "compute" : "memory";
}

const char* to_string(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Markdown: return "markdown";
  }
  return "?";
}

Metric parse_metric(const std::string& s) {
  if (s == "compute") return Metric::Compute;
  if (s == "memory") return Metric::Memory;
  throw std::invalid_argument("unknown metric: " + s);
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "markdown" || s == "md") return Format::Markdown;
  throw std::invalid_argument("unknown format: " + s);
}

FractionReport analyze_block(const ModelConfig& model, std::int64_t l,
                             const HardwareConfig& hw, TrafficMetric tm) {
  FractionReport rep;
  rep.model = model.name;
  rep.hardware = hw.name;
  rep.seqlen = l;
  rep.dataflow = hw.dataflow;
  rep.traffic_metric = tm;
  for (const auto& op : enumerate_block_ops(model, l)) {
    OpReportRow row;
    row.op = op;
    row.cost = cost(op, hw);
    row.traffic = traffic(op, hw);
    row.traffic_metric_value =
        traffic_value(row.traffic, tm, hw.element_bytes);
    rep.cycles_total += row.cost.compute_cycles;
    rep.memory_total += row.traffic_metric_value;
    if (op.quantizable) {
      rep.cycles_quant += row.cost.compute_cycles;
      rep.memory_quant += row.traffic_metric_value;
    }
    rep.per_op.push_back(std::move(row));
  }
  rep.f_compute =
      static_cast<double>(rep.cycles_quant) / static_cast<double>(rep.cycles_total);
  rep.f_memory =
      static_cast<double>(rep.memory_quant) / static_cast<double>(rep.memory_total);
  return rep;
}

SweepGrid sweep(const std::vector<ModelConfig>& models,
                const std::vector<std::int64_t>& seqlens,
                const HardwareConfig& hw, Metric metric, TrafficMetric tm) {
  if (models.empty() || seqlens.empty()) {
    throw std::invalid_argument("sweep needs at least one model and seqlen");
  }
  SweepGrid grid;
  grid.hw = hw;
  grid.metric = metric;
  grid.traffic_metric = tm;
  grid.seqlens = seqlens;
  for (const auto& m : models) grid.models.push_back(m.name);
  for (const auto l : seqlens) {
    std::vector<double> row;
    for (const auto& m : models) {
      const auto rep = analyze_block(m, l, hw, tm);
      row.push_back(metric == Metric::Compute ? rep.f_compute : rep.f_memory);
      if (rep.f_memory < rep.f_compute) {
        grid.warnings.push_back("f_memory < f_compute for " + m.name + " @ l=" +
                                std::to_string(l));
      }
    }
    grid.cells.push_back(std::move(row));
  }
  return grid;
}

std::string emit_grid(const SweepGrid& grid, Format format) {
  switch (format) {
    case Format::Csv: {
      std::ostringstream os;
      os << "seqlen";
      for (const auto& m : grid.models) os << "," << m;
      os << "\n";
      for (size_t r = 0; r < grid.seqlens.size(); ++r) {
        os << grid.seqlens[r];
        for (const double v : grid.cells[r]) os << "," << fixed4(v);
        os << "\n";
      }
      return os.str();
    }
    case Format::Json:
      return grid_to_json(grid).dump(2) + "\n";
    case Format::Markdown: {
      std::ostringstream os;
      os << "MatMul-free fraction (" << to_string(grid.metric) << ", "
         << grid.hw.name << ", " << to_string(grid.hw.dataflow) << ")\n\n";
      os << "| seqlen |";
      for (const auto& m : grid.models) os << " " << m << " |";
      os << "\n|---|";
      for (size_t i = 0; i < grid.models.size(); ++i) os << "---|";
      os << "\n";
      for (size_t r = 0; r < grid.seqlens.size(); ++r) {
        os << "| " << grid.seqlens[r] << " |";
        for (const double v : grid.cells[r]) os << " " << fixed4(v) << " |";
        os << "\n";
      }
      for (const auto& w : grid.warnings) os << "\nwarning: " << w << "\n";
      return os.str();
    }
  }
  throw std::invalid_argument("unsupported format");
}

nlohmann::json grid_to_json(const SweepGrid& grid) {
  return {{"tool_version", kToolVersion},
          {"hardware", hw_to_json(grid.hw)},
          {"metric", to_string(grid.metric)},
          {"traffic_metric", to_string(grid.traffic_metric)},
          {"seqlens", grid.seqlens},
          {"models", grid.models},
          {"cells", grid.cells},
          {"warnings", grid.warnings}};
}

SweepGrid grid_from_json(const nlohmann::json& j) {
  SweepGrid grid;
  grid.hw = hw_from_json(j.at("hardware"));
  grid.metric = parse_metric(j.at("metric").get<std::string>());
  grid.traffic_metric =
      parse_traffic_metric(j.at("traffic_metric").get<std::string>());
  grid.seqlens = j.at("seqlens").get<std::vector<std::int64_t>>();
  grid.models = j.at("models").get<std::vector<std::string>>();
  grid.cells = j.at("cells").get<std::vector<std::vector<double>>>();
  grid.warnings = j.at("warnings").get<std::vector<std::string>>();
  return grid;
}

AmdahlCurvePair curves(const FractionReport& report, Metric metric, int s_max) {
  const double f =
      metric == Metric::Compute ? report.f_compute : report.f_memory;
  return curve_pair(f, s_max);
}

std::string emit_curves(const AmdahlCurvePair& cp, const FractionReport& report,
                        Metric metric, Format format) {
  switch (format) {
    case Format::Csv: {
      std::ostringstream os;
      os << "s_partial,s_total_projections,s_total_attention\n";
      for (size_t i = 0; i < cp.projections.samples.size(); ++i) {
        os << cp.projections.samples[i].first << ","
           << fixed4(cp.projections.samples[i].second) << ","
           << fixed4(cp.attention.samples[i].second) << "\n";
      }
      return os.str();
    }
    case Format::Json: {
      const auto curve_json = [](const AmdahlCurve& c) {
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& [sp, st] : c.samples) samples.push_back({sp, st});
        return nlohmann::json{{"target", to_string(c.target)},
                              {"f", c.f},
                              {"asymptote", c.asymptote()},
                              {"samples", samples}};
      };
      nlohmann::json j{{"tool_version", kToolVersion},
                       {"model", report.model},
                       {"hardware", report.hardware},
                       {"seqlen", report.seqlen},
                       {"dataflow", to_string(report.dataflow)},
                       {"metric", to_string(metric)},
                       {"projections", curve_json(cp.projections)},
                       {"attention", curve_json(cp.attention)}};
      return j.dump(2) + "\n";
    }
    case Format::Markdown: {
      std::ostringstream os;
      os << "Speedup curves for " << report.model << " @ l=" << report.seqlen
         << " on " << report.hardware << " (" << to_string(metric)
         << " fraction f=" << fixed4(cp.projections.f) << ")\n\n"
         << "| s_partial | improve projections | improve attention |\n"
         << "|---|---|---|\n";
      for (size_t i = 0; i < cp.projections.samples.size(); ++i) {
        os << "| " << cp.projections.samples[i].first << " | "
           << fixed4(cp.projections.samples[i].second) << " | "
           << fixed4(cp.attention.samples[i].second) << " |\n";
      }
      os << "\nasymptotes: projections " << fixed4(cp.projections.asymptote())
         << ", attention " << fixed4(cp.attention.asymptote()) << "\n";
      return os.str();
    }
  }
  throw std::invalid_argument("unsupported format");
}

std::string emit_report(const FractionReport& report, Format format) {
  switch (format) {
    case Format::Csv: {
      std::ostringstream os;
      os << "role,head,m,k,n,quantizable,cycles,folds,utilization,traffic\n";
      for (const auto& row : report.per_op) {
        os << to_string(row.op.role) << ","
           << (row.op.head_index ? std::to_string(*row.op.head_index) : "")
           << "," << row.op.m << "," << row.op.k << "," << row.op.n << ","
           << (row.op.quantizable ? 1 : 0) << "," << row.cost.compute_cycles
           << "," << row.cost.folds << "," << fixed4(row.cost.utilization)
           << "," << row.traffic_metric_value << "\n";
      }
      os << "f_compute," << fixed4(report.f_compute) << ",,,,,,,,\n";
      os << "f_memory," << fixed4(report.f_memory) << ",,,,,,,,\n";
      return os.str();
    }
    case Format::Json: {
      nlohmann::json ops = nlohmann::json::array();
      for (const auto& row : report.per_op) {
        nlohmann::json op{{"role", to_string(row.op.role)},
                          {"m", row.op.m},
                          {"k", row.op.k},
                          {"n", row.op.n},
                          {"quantizable", row.op.quantizable},
                          {"cycles", row.cost.compute_cycles},
                          {"folds", row.cost.folds},
                          {"mac_count", row.cost.mac_count},
                          {"utilization", row.cost.utilization},
                          {"sram_reads_a", row.traffic.sram_reads_a},
                          {"sram_reads_b", row.traffic.sram_reads_b},
                          {"sram_writes_out", row.traffic.sram_writes_out},
                          {"dram_reads", row.traffic.dram_reads},
                          {"dram_writes", row.traffic.dram_writes},
                          {"traffic_metric_value", row.traffic_metric_value}};
        if (row.op.head_index) op["head"] = *row.op.head_index;
        ops.push_back(std::move(op));
      }
      nlohmann::json j{{"tool_version", kToolVersion},
                       {"model", report.model},
                       {"hardware", report.hardware},
                       {"seqlen", report.seqlen},
                       {"dataflow", to_string(report.dataflow)},
                       {"traffic_metric", to_string(report.traffic_metric)},
                       {"cycles_quantizable", report.cycles_quant},
                       {"cycles_total", report.cycles_total},
                       {"memory_quantizable", report.memory_quant},
                       {"memory_total", report.memory_total},
                       {"f_compute", report.f_compute},
                       {"f_memory", report.f_memory},
                       {"ops", ops}};
      return j.dump(2) + "\n";
    }
    case Format::Markdown: {
      std::ostringstream os;
      os << "Block analysis: " << report.model << " @ l=" << report.seqlen
         << " on " << report.hardware << " (" << to_string(report.dataflow)
         << ")\n\n"
         << "| role | head | m | k | n | quant | cycles | folds | traffic |\n"
         << "|---|---|---|---|---|---|---|---|---|\n";
      for (const auto& row : report.per_op) {
        os << "| " << to_string(row.op.role) << " | "
           << (row.op.head_index ? std::to_string(*row.op.head_index) : "-")
           << " | " << row.op.m << " | " << row.op.k << " | " << row.op.n
           << " | " << (row.op.quantizable ? "yes" : "no") << " | "
           << row.cost.compute_cycles << " | " << row.cost.folds << " | "
           << row.traffic_metric_value << " |\n";
      }
      os << "\nf_compute = " << fixed4(report.f_compute)
         << "\nf_memory = " << fixed4(report.f_memory) << "\n";
      return os.str();
    }
  }
  throw std::invalid_argument("unsupported format");
}

}  // namespace bitfrac
