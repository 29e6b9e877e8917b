#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bitfrac/report.hpp"

using namespace bitfrac;

namespace {

std::vector<ModelConfig> opt_family() {
  std::vector<ModelConfig> v;
  for (const auto& m : builtin_models()) {
    if (m.name.starts_with("opt-")) v.push_back(m);
  }
  return v;
}

}  // namespace

TEST_CASE("analyze_block reproduces the reported cloud fractions") {
  const auto& cloud = find_hardware("cloud");
  const auto r350 = analyze_block(find_model("opt-350m"), 2048, cloud);
  CHECK(r350.f_compute == doctest::Approx(0.371).epsilon(0.30));
  CHECK(std::abs(r350.f_compute - 0.371) < 0.10);

  const auto r13 = analyze_block(find_model("opt-1.3b"), 2048, cloud);
  CHECK(std::abs(r13.f_compute - 0.50) < 0.10);

  CHECK(std::abs(analyze_block(find_model("opt-6.7b"), 4096, cloud).f_compute -
                 0.645) < 0.10);
  CHECK(std::abs(analyze_block(find_model("opt-13b"), 4096, cloud).f_compute -
                 0.69) < 0.10);
}

TEST_CASE("analyze_block totals are consistent with per-op rows") {
  const auto& edge = find_hardware("edge");
  const auto rep = analyze_block(find_model("gpt-355m"), 1024, edge);
  std::int64_t cycles = 0, quant_cycles = 0;
  for (const auto& row : rep.per_op) {
    cycles += row.cost.compute_cycles;
    if (row.op.quantizable) quant_cycles += row.cost.compute_cycles;
  }
  CHECK(cycles == rep.cycles_total);
  CHECK(quant_cycles == rep.cycles_quant);
  CHECK(rep.f_compute > 0.0);
  CHECK(rep.f_compute < 1.0);
  CHECK(rep.f_memory > 0.0);
  CHECK(rep.f_memory < 1.0);
  CHECK(rep.per_op.size() == 2 * 16 + 6);
}

TEST_CASE("sweep grid trends on the cloud OPT family") {
  const auto grid = sweep(opt_family(), default_sweep_seqlens(),
                          find_hardware("cloud"), Metric::Compute);
  REQUIRE(grid.cells.size() == 6);
  REQUIRE(grid.cells[0].size() == 7);
  for (size_t r = 0; r < grid.cells.size(); ++r) {
    for (size_t c = 0; c < grid.cells[r].size(); ++c) {
      CHECK(grid.cells[r][c] > 0.0);
      CHECK(grid.cells[r][c] < 1.0);
      // nondecreasing in model size (columns are ordered by size)
      if (c > 0) CHECK(grid.cells[r][c] >= grid.cells[r][c - 1]);
      // nonincreasing in sequence length
      if (r > 0) CHECK(grid.cells[r][c] <= grid.cells[r - 1][c]);
    }
  }
}

TEST_CASE("memory fraction dominates compute fraction on cloud OPT cells") {
  const auto& cloud = find_hardware("cloud");
  for (const auto& m : opt_family()) {
    for (const auto l : default_sweep_seqlens()) {
      const auto rep = analyze_block(m, l, cloud);
      CHECK(rep.f_memory >= rep.f_compute);
    }
  }
  // enforced as a soft check in sweep(): violations surface as warnings
  const auto grid = sweep(opt_family(), default_sweep_seqlens(),
                          find_hardware("cloud"), Metric::Memory);
  CHECK(grid.warnings.empty());
}

TEST_CASE("csv emission shape") {
  const auto models = std::vector<ModelConfig>{find_model("opt-350m"),
                                               find_model("opt-1.3b")};
  const auto grid = sweep(models, {128, 256}, find_hardware("cloud"),
                          Metric::Compute);
  const auto csv = emit_grid(grid, Format::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.starts_with("seqlen,opt-350m,opt-1.3b\n128,"));
}

TEST_CASE("json round trip") {
  const auto grid = sweep({find_model("llama-7b")}, {128, 4096},
                          find_hardware("edge"), Metric::Memory);
  const auto j = grid_to_json(grid);
  CHECK(j.at("tool_version") == kToolVersion);
  const auto back = grid_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.hw.name == grid.hw.name);
  CHECK(back.hw.rows == grid.hw.rows);
  CHECK(back.hw.dataflow == grid.hw.dataflow);
  CHECK(back.metric == grid.metric);
  CHECK(back.seqlens == grid.seqlens);
  CHECK(back.models == grid.models);
  CHECK(back.cells == grid.cells);
}

TEST_CASE("curve emission row count") {
  const auto rep =
      analyze_block(find_model("opt-1.3b"), 2048, find_hardware("cloud"));
  const auto cp = curves(rep, Metric::Compute, 100);
  const auto csv = emit_curves(cp, rep, Metric::Compute, Format::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 101);  // header + 100
}

TEST_CASE("deterministic output") {
  const auto run = [] {
    return emit_grid(sweep(opt_family(), default_sweep_seqlens(),
                           find_hardware("cloud"), Metric::Compute),
                     Format::Csv);
  };
  CHECK(run() == run());
}

TEST_CASE("empty sweep inputs are rejected") {
  CHECK_THROWS_AS(sweep({}, {128}, find_hardware("cloud"), Metric::Compute),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep({find_model("opt-350m")}, {}, find_hardware("cloud"),
                        Metric::Compute),
                  std::invalid_argument);
}

TEST_CASE("format and metric parsing") {
  CHECK(parse_metric("memory") == Metric::Memory);
  CHECK(parse_format("md") == Format::Markdown);
  CHECK_THROWS_AS(parse_metric("energy"), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}
