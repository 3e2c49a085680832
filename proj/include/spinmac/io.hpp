#pragma once

#include <cstdint>
#include <string>

#include "spinmac/accounting.hpp"
#include "spinmac/engine.hpp"
#include "spinmac/multiplier.hpp"
#include "spinmac/sllg.hpp"

namespace spinmac {

// Matrix files: first line N, then N rows of N integers.
IntegerMatrix load_matrix(const std::string& path);
IntegerMatrix parse_matrix(const std::string& text, const std::string& label);
std::string format_matrix(const IntegerMatrix& m);

// All formatters produce byte-stable text for identical inputs; any randomized
// content carries its seed in a comment header.
std::string format_transfer_csv(const TransferCharacteristic& curve, std::uint64_t seed);
std::string format_fit_summary(const LinearFit& fit);
std::string format_trajectory_csv(const Trajectory& traj, double gate_v, std::uint64_t seed);
std::string format_run_csv(const RunReport& report);
std::string format_run_summary(const RunReport& report);
std::string format_sweep_csv(const std::vector<CrossbarComparison>& rows, const CostModel& model);
std::string format_calibration_block(const LinearFit& fit, double decode_scale_per_m,
                                     double mobility_gain_m3_per_a);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spinmac
