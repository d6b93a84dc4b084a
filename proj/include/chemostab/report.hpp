#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chemostab/simulator.hpp"
#include "chemostab/spectral.hpp"

namespace chemostab {

/// JSON document for a stability report. Doubles use the shortest
/// round-trip form, non-finite values become null.
std::string report_json(const StabilityReport& report, const ModelSpec& model, const SteadyState& ss);

/// mode_id,mu,max_re,abs_im_at_max; one row per mode.
std::string report_csv(const StabilityReport& report);

/// t,mass,mode_amplitude,max_deviation,mean_<species>...
std::string trajectory_csv(const Trajectory& traj, const ModelSpec& model);

/// Snapshot layout, little-endian host order:
///   int64 n, int64 N, int64 count
///   count times: double t, double u[n], double v[N][n] (row-major)
void write_snapshots(const Trajectory& traj, std::size_t species_count, std::ostream& out);
std::vector<State> read_snapshots(std::istream& in);

}  // namespace chemostab
