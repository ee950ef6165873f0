#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "taskmech/mechanism.hpp"
#include "taskmech/solver.hpp"
#include "taskmech/verifier.hpp"

namespace taskmech {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

// All writers emit the exact column orders the file formats pin down.
// Serializers to strings are separated from file writing so runs can be
// compared byte-for-byte in memory.
std::string schedule_to_csv(const RewardSchedule& schedule);
RewardSchedule schedule_from_csv(const std::string& text);
RewardSchedule read_schedule_csv(const std::filesystem::path& path);

std::string trace_to_csv(const SolveTrace& trace);
std::string snapshots_to_csv(const SolveTrace& trace, const TypeGrid& grid);
std::string utility_matrix_to_csv(const UtilityMatrix& matrix, const TypeGrid& grid);
std::string sweep_to_csv(const std::vector<Alpha0Evaluation>& evaluations);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace taskmech
