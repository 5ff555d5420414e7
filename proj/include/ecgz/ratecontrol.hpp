#pragma once

#include "ecgz/codec.hpp"
#include "ecgz/metrics.hpp"

namespace ecgz {

enum class Metric { prd, prd_b };

struct RateControlOptions {
  Metric metric = Metric::prd;
  double tolerance = 0.01;  // absolute, in percent
  double delta_min = 1e-4;
  double delta_max = 1e4;
  int max_iterations = 60;
  int scan_points = 64;
  double baseline = 1024.0;
};

struct RateControlResult {
  double delta = 0.0;
  QualityReport report;
  bool target_met = false;
  int evaluations = 0;
};

/// Full report (entropy coding included) for one quantization step.
QualityReport evaluate(const PreparedRecord& prepared, double delta, double baseline = 1024.0);

/// Searches the quantization step whose distortion lands within `tolerance`
/// of `target`: bisection on log(delta), then a grid scan around the final
/// bracket if the staircase in distortion(delta) defeats bisection. Returns
/// the closest step seen, with target_met = false when no step is within
/// tolerance (including targets <= 0 and targets outside
/// [distortion(delta_min), distortion(delta_max)]).
RateControlResult find_delta(const PreparedRecord& prepared, double target, const RateControlOptions& options = {});
RateControlResult find_delta(const EcgRecord& record, double target, Mode mode,
                             const RateControlOptions& options = {});

std::string metric_name(Metric metric);
Metric parse_metric(std::string_view name);

}  // namespace ecgz
