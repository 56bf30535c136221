#include "sbldoa/pipeline.hpp"

#include <algorithm>

namespace sbldoa {

EstimationResult estimate_directions(const Eigen::MatrixXcd& snapshots,
                                     const GridDictionary& dict,
                                     const EstimatorConfig& cfg,
                                     double fine_step_deg) {
  SblResult run = run_offgrid_sbl(snapshots, dict, cfg);
  const SblState& st = run.state;

  double fine = fine_step_deg;
  if (!(fine > 0.0)) fine = st.dict.step > 0.0 ? st.dict.step / 100.0 : 0.01;

  EstimationResult out;
  out.converged = run.converged;
  out.iterations = run.iterations;
  out.trace = std::move(run.trace);
  out.grid_deg = st.dict.grid;
  out.spectrum.assign(st.delta.data(), st.delta.data() + st.delta.size());

  const PeakSearch found = find_peaks(st.delta, st.dict.grid, cfg.num_sources);
  out.peak_shortfall = found.shortfall;
  for (const PeakCluster& peak : found.peaks) {
    bool fallback = false;
    out.angles_deg.push_back(refine_peak(peak, snapshots, st, fine, &fallback));
    out.peak_indices.push_back(peak.index);
    out.refine_fallback = out.refine_fallback || fallback;
  }
  std::sort(out.angles_deg.begin(), out.angles_deg.end());
  return out;
}

}  // namespace sbldoa
