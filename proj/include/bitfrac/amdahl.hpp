#pragma once

#include <utility>
#include <vector>

namespace bitfrac {

/// Overall speedup when a fraction f of the system is sped up by s_partial:
/// 1 / (1 - f + f / s_partial). Throws std::domain_error outside
/// f in [0,1], s_partial >= 1.
double s_total(double f, double s_partial);

enum class ImprovementTarget { Projections, Attention };

const char* to_string(ImprovementTarget t);

struct AmdahlCurve {
  double f = 0.0;
  ImprovementTarget target = ImprovementTarget::Projections;
  std::vector<std::pair<double, double>> samples;  // (s_partial, s_total)

  double asymptote() const { return 1.0 / (1.0 - f); }
};

struct AmdahlCurvePair {
  AmdahlCurve projections;  // improved fraction = f
  AmdahlCurve attention;    // improved fraction = 1 - f
};

/// Both curves for a given projection fraction f, sampled at integer
/// s_partial in [1, s_max]. Throws std::domain_error when s_max < 1.
AmdahlCurvePair curve_pair(double f, int s_max);

}  // namespace bitfrac
