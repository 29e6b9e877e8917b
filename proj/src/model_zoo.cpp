#include "bitfrac/model_zoo.hpp"

#include <stdexcept>

#include "bitfrac/config_file.hpp"

namespace bitfrac {

const char* to_string(OpRole role) {
  switch (role) {
    case OpRole::QProj: return "q_proj";
    case OpRole::KProj: return "k_proj";
    case OpRole::VProj: return "v_proj";
    case OpRole::OutProj: return "out_proj";
    case OpRole::FFIntermediate: return "ff_intermediate";
    case OpRole::FFOutput: return "ff_output";
    case OpRole::ScoreQK: return "score_qk";
    case OpRole::ContextSV: return "context_sv";
  }
  return "?";
}

bool is_projection(OpRole role) {
  switch (role) {
    case OpRole::QProj:
    case OpRole::KProj:
    case OpRole::VProj:
    case OpRole::OutProj:
    case OpRole::FFIntermediate:
    case OpRole::FFOutput:
      return true;
    case OpRole::ScoreQK:
    case OpRole::ContextSV:
      return false;
  }
  return false;
}

std::int64_t ModelConfig::head_dim() const {
  if (head_dim_override) return *head_dim_override;
  return d / h;  // floor; warning flag set at construction when d % h != 0
}

void ModelConfig::validate() const {
  if (d <= 0 || h <= 0 || d_ff <= 0) {
    throw std::invalid_argument("model '" + name +
                                "': d, h, d_ff must be positive");
  }
  if (seqlen_min > seqlen_max || seqlen_min <= 0) {
    throw std::invalid_argument("model '" + name +
                                "': invalid sequence length range");
  }
  if (head_dim() < 1) {
    throw std::invalid_argument("model '" + name + "': head_dim < 1");
  }
}

ModelConfig make_model(std::string name, std::int64_t d, std::int64_t h,
                       std::int64_t d_ff, std::int64_t seqlen_min,
                       std::int64_t seqlen_max,
                       std::optional<std::int64_t> head_dim_override) {
  ModelConfig m;
  m.name = std::move(name);
  m.d = d;
  m.h = h;
  m.d_ff = d_ff;
  m.seqlen_min = seqlen_min;
  m.seqlen_max = seqlen_max;
  m.head_dim_override = head_dim_override;
  m.head_dim_warning = !head_dim_override && h > 0 && d % h != 0;
  m.validate();
  return m;
}

const std::vector<ModelConfig>& builtin_models() {
  static const std::vector<ModelConfig> models = {
      make_model("gpt-125m", 768, 12, 768),
      make_model("gpt-355m", 1024, 16, 1024),
      make_model("gpt-774m", 1280, 20, 1280),
      make_model("gpt-1.5b", 1600, 25, 1600),
      make_model("opt-350m", 1024, 16, 4096),
      make_model("opt-1.3b", 2048, 32, 8192),
      make_model("opt-2.7b", 2560, 32, 10240),
      make_model("opt-6.7b", 4096, 32, 16384),
      make_model("opt-13b", 5120, 40, 20480),
      make_model("opt-30b", 7168, 56, 28672),
      make_model("opt-66b", 9216, 76, 36864),
      make_model("llama-7b", 4096, 32, 11008),
      make_model("llama-13b", 5120, 40, 13824),
  };
  return models;
}

const ModelConfig& find_model(const std::string& name) {
  for (const auto& m : builtin_models()) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("unknown model: " + name);
}

std::vector<MatMulOp> enumerate_block_ops(const ModelConfig& model,
                                          std::int64_t l) {
  model.validate();
  if (l < model.seqlen_min || l > model.seqlen_max) {
    throw std::out_of_range("sequence length " + std::to_string(l) +
                            " outside [" + std::to_string(model.seqlen_min) +
                            ", " + std::to_string(model.seqlen_max) +
                            "] for model " + model.name);
  }
  const std::int64_t d = model.d;
  const std::int64_t hd = model.head_dim();
  std::vector<MatMulOp> ops;
  ops.reserve(static_cast<size_t>(2 * model.h + 6));

  const auto proj = [&](OpRole role, std::int64_t m, std::int64_t k) {
    ops.push_back({role, m, k, 1, true, {}});
  };
  proj(OpRole::QProj, d, d);
  proj(OpRole::KProj, d, d);
  proj(OpRole::VProj, d, d);
  proj(OpRole::OutProj, d, d);
  proj(OpRole::FFIntermediate, model.d_ff, d);
  proj(OpRole::FFOutput, d, model.d_ff);

  for (int head = 0; head < model.h; ++head) {
    ops.push_back({OpRole::ScoreQK, l, hd, 1, false, head});
    ops.push_back({OpRole::ContextSV, hd, l, 1, false, head});
  }
  return ops;
}

ModelConfig load_model_config(const std::string& path) {
  const auto kv = parse_config_file(path);
  std::optional<std::int64_t> head_dim;
  if (kv.count("head_dim")) head_dim = config_int(kv, "head_dim");
  return make_model(config_str(kv, "name"), config_int(kv, "d"),
                    config_int(kv, "h"), config_int(kv, "d_ff"),
                    config_int_or(kv, "seqlen_min", 128),
                    config_int_or(kv, "seqlen_max", 4096), head_dim);
}

}  // namespace bitfrac
