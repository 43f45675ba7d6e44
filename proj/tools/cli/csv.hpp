#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "barypoly/dynamics.hpp"
#include "barypoly/geometry.hpp"

namespace barypoly::cli {

// %.17g
std::string format_double(double x);

// Header m,u_1..u_p,spread,phase,one_minus_u_1..one_minus_u_p; one row per
// recorded state. Coordinates use ExtendedReal::to_exact_string().
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj);

// States from a trajectory CSV, each coordinate rebuilt from its u and
// one_minus_u columns. Throws std::invalid_argument on malformed input.
std::vector<ConjugateTuple> read_trajectory_csv(std::istream& in);

// Header m,g_1..g_dim,distance, then "# fitted_rate=<value|none>".
void write_dual_csv(std::ostream& out, const DualSequenceRecord& dual);

}  // namespace barypoly::cli
