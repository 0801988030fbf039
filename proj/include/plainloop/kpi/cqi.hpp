#pragma once

#include "plainloop/kpi/kpi_config.hpp"
#include "plainloop/metrics/snapshot.hpp"

namespace plainloop::kpi {

// Components in [0,1]; readability already divided by 100.
double compute_cqi(double readability, double fidelity, double structure, const CqiWeights& weights);

// Throws MissingComponent when readability, semantic fidelity or
// structural clarity is absent from the snapshot.
double compute_cqi(const metrics::MetricSnapshot& snapshot, const KpiConfig& config);

}  // namespace plainloop::kpi
