#pragma once

#include <string>

#include "imcflab/flow.hpp"

namespace imcf {

// Fixed-order CSV schema for trace files; values print with %.17g so that
// identical runs produce identical bytes.
extern const char* const kTraceHeader;

std::string format_trace_row(const TraceRow& row);
TraceRow parse_trace_row(const std::string& line);

// Reads a whole trace.csv (header validated).
FlowTrace read_trace_csv(const std::string& path);

}  // namespace imcf
