#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bitfrac {

// Roles of the 2h+6 matrix-vector multiplies in one decoder block.
enum class OpRole {
  QProj,
  KProj,
  VProj,
  OutProj,
  FFIntermediate,
  FFOutput,
  ScoreQK,
  ContextSV,
};

const char* to_string(OpRole role);

/// True for the six weight-to-activation projections (the quantizable part).
bool is_projection(OpRole role);

/// One decode-time matrix-vector multiply: (m x k) * (k x n), n == 1 for decode.
struct MatMulOp {
  OpRole role;
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t n = 1;
  bool quantizable = false;
  std::optional<int> head_index;

  std::int64_t mac_count() const { return m * k * n; }
};

struct ModelConfig {
  std::string name;
  std::int64_t d = 0;     // embedding dimension
  std::int64_t h = 0;     // attention heads
  std::int64_t d_ff = 0;  // feed-forward size
  std::int64_t seqlen_min = 128;
  std::int64_t seqlen_max = 4096;
  std::optional<std::int64_t> head_dim_override;
  // Set when d % h != 0 and no override was given; head_dim() then floors.
  bool head_dim_warning = false;

  std::int64_t head_dim() const;

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

/// Builds a config, computing the head-dim warning flag. Validates.
ModelConfig make_model(std::string name, std::int64_t d, std::int64_t h,
                       std::int64_t d_ff, std::int64_t seqlen_min = 128,
                       std::int64_t seqlen_max = 4096,
                       std::optional<std::int64_t> head_dim_override = {});

/// The 13 built-in GPT/OPT/LLaMA configurations.
const std::vector<ModelConfig>& builtin_models();

/// Lookup by name; throws std::out_of_range for unknown names.
const ModelConfig& find_model(const std::string& name);

/// All 2h+6 MatMuls of one decoder block at context length l, in stable order:
/// Q/K/V/Out projections, the two FF layers, then per head QK before SV.
/// Throws std::out_of_range when l is outside the model's range.
std::vector<MatMulOp> enumerate_block_ops(const ModelConfig& model,
                                          std::int64_t l);

/// Loads a model from a key = value config file.
ModelConfig load_model_config(const std::string& path);

}  // namespace bitfrac
