#include "bitfrac/amdahl.hpp"

#include <stdexcept>

namespace bitfrac {

double s_total(double f, double s_partial) {
  if (f < 0.0 || f > 1.0) {
    throw std::domain_error("fraction must lie in [0, 1]");
  }
  if (s_partial < 1.0) {
    throw std::domain_error("s_partial must be >= 1");
  }
  return 1.0 / (1.0 - f + f / s_partial);
}

const char* to_string(ImprovementTarget t) {
  return t == ImprovementTarget::Projections ? "projections" : "attention";
}

AmdahlCurvePair curve_pair(double f, int s_max) {
  if (s_max < 1) throw std::domain_error("s_max must be >= 1");
  AmdahlCurvePair pair;
  pair.projections.f = f;
  pair.projections.target = ImprovementTarget::Projections;
  pair.attention.f = 1.0 - f;
  pair.attention.target = ImprovementTarget::Attention;
  for (int s = 1; s <= s_max; ++s) {
    const auto sp = static_cast<double>(s);
    pair.projections.samples.emplace_back(sp, s_total(f, sp));
    pair.attention.samples.emplace_back(sp, s_total(1.0 - f, sp));
  }
  return pair;
}

}  // namespace bitfrac
