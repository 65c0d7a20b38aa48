#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frauddet/metrics.hpp"

namespace frauddet {

struct ReportRow {
    std::string label;  // model acronym or "CC-MV 8" style ensemble id
    MetricsRow metrics;
    std::vector<MetricsRow> fold_metrics;  // optional per-fold breakdown
};

/// Rows sorted by bcr desc, then sens desc, then mean4 desc; undefined values
/// order below any defined value, and fully tied rows keep insertion order.
struct EvaluationReport {
    std::vector<ReportRow> rows;
};

EvaluationReport build_report(std::vector<ReportRow> rows);

/// label,acc,bcr,sens,spec,f1,mean columns, undefined values as "NA".
void write_report_csv(std::ostream& out, const EvaluationReport& report);

/// Aligned plain-text table in the Model/Ensemble, acc, bcr, sens, spec,
/// Mean column layout, three decimals.
void write_report_table(std::ostream& out, const EvaluationReport& report);

}  // namespace frauddet
