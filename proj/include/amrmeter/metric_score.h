#ifndef AMRMETER_METRIC_SCORE_H_
#define AMRMETER_METRIC_SCORE_H_

#include <map>
#include <string>

namespace amrmeter {

// One metric value for one test case, with optional named components
// (precision/recall, connectivity scores, edge counts).
struct MetricScore {
  std::string metric_id;
  double value = 0.0;
  std::map<std::string, double> components;
};

}  // namespace amrmeter

#endif  // AMRMETER_METRIC_SCORE_H_
