#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "prism/pipeline.hpp"

namespace prism {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { json, tsv };

/// Compact JSON with sorted keys; `config` is present only when the report
/// carries one. Timings are not written, so equal reports serialize to
/// equal bytes.
std::string report_to_json(const ConceptReport& r);

/// Header line, then one concept per row: sub_hypergraph, source,
/// concept_members (comma-joined), parent_tht.
std::string report_to_tsv(const ConceptReport& r);

void emit_report(const ConceptReport& r, ReportFormat format, std::ostream& out);

/// Inverse of report_to_json. Throws std::runtime_error on malformed input
/// or an unknown schema version.
ConceptReport parse_report(std::string_view json);

}  // namespace prism
