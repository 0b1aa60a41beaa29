#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "smcsim/metrics.hpp"
#include "smcsim/record.hpp"
#include "smcsim/simulation.hpp"

namespace smcsim {

// CSV run log: header row of SimRecord::kColumnNames, then one row per
// record with shortest round-trip decimal formatting.
void write_csv(std::ostream& out, std::span<const SimRecord> log);
void write_csv_file(const std::filesystem::path& path, std::span<const SimRecord> log);

// Inverse of write_csv. Throws Error on a header mismatch or malformed row.
std::vector<SimRecord> read_csv(std::istream& in);
std::vector<SimRecord> read_csv_file(const std::filesystem::path& path);

// JSON summary of one run. Non-finite values are written as null.
std::string metrics_json(const Scenario& scenario, const RunResult& run);

// Per-controller metrics plus pairwise chattering ratios.
std::string comparison_json(const Scenario& scenario, const Comparison& cmp);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace smcsim
