#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ssqp/driver.hpp"

namespace ssqp {

inline constexpr int kTraceSchemaVersion = 1;

/// Header for a trace with n variables and m constraints. Vector fields expand
/// to one column per entry ("x[0]", "x[1]", ...); the leading column carries the
/// schema version.
std::vector<std::string> trace_columns(int n, int m);

/// One row per record, floats at 17 significant digits, booleans as 0/1 and
/// infinite extended reals as "inf".
void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace, int n, int m);

/// Inverse of write_trace_csv. Throws Error(kIoError) on malformed input.
std::vector<IterationRecord> read_trace_csv(std::istream& in);

/// Writes `contents` to `path` through a temporary sibling and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace ssqp
