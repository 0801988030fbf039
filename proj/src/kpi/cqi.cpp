#include "plainloop/kpi/cqi.hpp"

#include "plainloop/common/error.hpp"

namespace plainloop::kpi {

double compute_cqi(double readability, double fidelity, double structure, const CqiWeights& weights) {
  return weights.readability * readability + weights.fidelity * fidelity + weights.structure * structure;
}

double compute_cqi(const metrics::MetricSnapshot& snapshot, const KpiConfig& config) {
  if (!snapshot.readability) throw Error(ErrorCode::MissingComponent, "CQI needs readability");
  if (!snapshot.semantic_fidelity) throw Error(ErrorCode::MissingComponent, "CQI needs semantic_fidelity");
  if (!snapshot.structural_clarity) throw Error(ErrorCode::MissingComponent, "CQI needs structural_clarity");
  return compute_cqi(*snapshot.readability / 100.0, *snapshot.semantic_fidelity, *snapshot.structural_clarity,
                     config.weights);
}

}  // namespace plainloop::kpi
