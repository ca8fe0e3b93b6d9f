#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "heiskern/quadrature.hpp"

namespace heiskern::cli {

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> z_magnitudes;
  std::vector<double> tau_values;
  numerics::QuadratureConfig cfg;
  std::string output_path;
};

/// Entry point. argv[0] is the program name. Exit codes: 0 success, 1 failed
/// verification or evaluation, 2 usage error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Writes the sweep table; returns false when any grid point failed to
/// converge. `timing` false writes 0 in the seconds column.
bool run_sweep(const SweepSpec& spec, std::ostream& csv, bool timing = true);

}  // namespace heiskern::cli
