#pragma once

#include "wmh/estimate.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wmh::cli {

/// Runs the command line `args` (without the program name). Returns the process
/// exit code: 0 on success, nonzero on usage or library errors.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Shortest round-trip decimal form; "nan" for NaN.
std::string format_real(double v);

/// algo,D,repetition,mse,sketch_seconds,status
void write_runs_csv(std::ostream &out, const BenchReport &report);
/// algo,D,reps_ok,mse_mean,mse_std,status
void write_mse_csv(std::ostream &out, const BenchReport &report);
/// algo,D,reps_ok,seconds_mean,seconds_std,status
void write_runtime_csv(std::ostream &out, const BenchReport &report);

} // namespace wmh::cli
