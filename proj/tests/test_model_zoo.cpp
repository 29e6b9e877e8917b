#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "bitfrac/model_zoo.hpp"

using namespace bitfrac;

TEST_CASE("builtin model table") {
  const auto& models = builtin_models();
  CHECK(models.size() == 13);

  const auto& opt13 = find_model("opt-1.3b");
  CHECK(opt13.d == 2048);
  CHECK(opt13.h == 32);
  CHECK(opt13.d_ff == 8192);
  CHECK_FALSE(opt13.head_dim_warning);

  const auto& llama = find_model("llama-7b");
  CHECK(llama.d == 4096);
  CHECK(llama.h == 32);
  CHECK(llama.d_ff == 11008);

  // 9216 is not divisible by 76; head_dim floors and the config is flagged.
  const auto& opt66 = find_model("opt-66b");
  CHECK(opt66.d == 9216);
  CHECK(opt66.h == 76);
  CHECK(opt66.d_ff == 36864);
  CHECK(opt66.head_dim_warning);
  CHECK(opt66.head_dim() == 121);

  for (const auto& m : models) {
    CHECK(m.seqlen_min == 128);
    CHECK(m.seqlen_max == 4096);
  }
  CHECK_THROWS_AS(find_model("opt-175b"), std::out_of_range);
}

TEST_CASE("block op enumeration for opt-350m at l=2048") {
  const auto ops = enumerate_block_ops(find_model("opt-350m"), 2048);
  REQUIRE(ops.size() == 38);  // 2*16 + 6

  CHECK(ops[0].role == OpRole::QProj);
  CHECK(ops[0].m == 1024);
  CHECK(ops[0].k == 1024);
  CHECK(ops[4].role == OpRole::FFIntermediate);
  CHECK(ops[4].m == 4096);
  CHECK(ops[4].k == 1024);
  CHECK(ops[5].role == OpRole::FFOutput);
  CHECK(ops[5].m == 1024);
  CHECK(ops[5].k == 4096);

  for (size_t i = 6; i < ops.size(); i += 2) {
    CHECK(ops[i].role == OpRole::ScoreQK);
    CHECK(ops[i].m == 2048);
    CHECK(ops[i].k == 64);
    CHECK(ops[i + 1].role == OpRole::ContextSV);
    CHECK(ops[i + 1].m == 64);
    CHECK(ops[i + 1].k == 2048);
    CHECK(*ops[i].head_index == static_cast<int>((i - 6) / 2));
  }
}

TEST_CASE("block op enumeration for gpt-125m at l=128") {
  const auto ops = enumerate_block_ops(find_model("gpt-125m"), 128);
  CHECK(ops.size() == 30);  // h=12
  CHECK(ops[6].role == OpRole::ScoreQK);
  CHECK(ops[6].m == 128);
  CHECK(ops[6].k == 64);  // floor(768/12)
}

TEST_CASE("enumeration invariants over every builtin model") {
  for (const auto& model : builtin_models()) {
    for (const std::int64_t l : {model.seqlen_min, model.seqlen_max}) {
      const auto ops = enumerate_block_ops(model, l);
      CHECK(std::ssize(ops) == 2 * model.h + 6);
      std::int64_t quant = 0, attn = 0, quant_macs = 0, attn_macs = 0;
      for (const auto& op : ops) {
        CHECK(op.n == 1);
        CHECK(op.m >= 1);
        CHECK(op.k >= 1);
        CHECK(op.quantizable == is_projection(op.role));
        (op.quantizable ? quant : attn) += 1;
        (op.quantizable ? quant_macs : attn_macs) += op.mac_count();
      }
      CHECK(quant == 6);
      CHECK(attn == 2 * model.h);
      CHECK(quant_macs ==
            4 * model.d * model.d + 2 * model.d * model.d_ff);
      CHECK(attn_macs == 2 * model.h * l * model.head_dim());
    }
  }
}

TEST_CASE("projection dims are independent of sequence length") {
  const auto& model = find_model("opt-2.7b");
  const auto lo = enumerate_block_ops(model, model.seqlen_min);
  const auto hi = enumerate_block_ops(model, model.seqlen_max);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(lo[i].m == hi[i].m);
    CHECK(lo[i].k == hi[i].k);
  }
}

TEST_CASE("out-of-range sequence length") {
  const auto& model = find_model("opt-350m");
  CHECK_THROWS_AS(enumerate_block_ops(model, 64), std::out_of_range);
  CHECK_THROWS_AS(enumerate_block_ops(model, 8192), std::out_of_range);
}

TEST_CASE("model config validation") {
  CHECK_THROWS_AS(make_model("bad", 0, 4, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_model("bad", 64, 4, 16, 4096, 128),
                  std::invalid_argument);
  const auto m = make_model("odd", 100, 3, 16);
  CHECK(m.head_dim_warning);
  CHECK(m.head_dim() == 33);
  const auto o = make_model("override", 100, 3, 16, 128, 4096, 32);
  CHECK_FALSE(o.head_dim_warning);
  CHECK(o.head_dim() == 32);
}

TEST_CASE("custom model config file") {
  const std::string path = "test_model.cfg";
  {
    std::ofstream f(path);
    f << "# custom model\n"
      << "name = tiny\n"
      << "d = 512\n"
      << "h = 8\n"
      << "d_ff = 2048\n"
      << "seqlen_min = 64\n"
      << "seqlen_max = 1024\n";
  }
  const auto m = load_model_config(path);
  CHECK(m.name == "tiny");
  CHECK(m.d == 512);
  CHECK(m.h == 8);
  CHECK(m.d_ff == 2048);
  CHECK(m.seqlen_min == 64);
  CHECK(m.seqlen_max == 1024);
  CHECK(enumerate_block_ops(m, 256).size() == 22);
  std::remove(path.c_str());

  CHECK_THROWS(load_model_config("does_not_exist.cfg"));
}
