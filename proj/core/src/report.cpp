#include "frauddet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace frauddet {

namespace {

double rank_value(const std::optional<double>& metric) {
    return metric.value_or(-std::numeric_limits<double>::infinity());
}

std::string format_metric(double metric, const char* fmt) {
    char buf[32];
    std::snprintf(buf, sizeof buf, fmt, metric);
    return buf;
}

bool report_less(const ReportRow& a, const ReportRow& b) {
    const double a_bcr = rank_value(a.metrics.bcr), b_bcr = rank_value(b.metrics.bcr);
    if (a_bcr != b_bcr) return a_bcr > b_bcr;
    const double a_sens = rank_value(a.metrics.sens), b_sens = rank_value(b.metrics.sens);
    if (a_sens != b_sens) return a_sens > b_sens;
    return a.metrics.mean4 > b.metrics.mean4;
}

std::string format_metric(const std::optional<double>& metric, const char* fmt) {
    if (!metric) return "NA";
    return format_metric(*metric, fmt);
}

}  // namespace

EvaluationReport build_report(std::vector<ReportRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), report_less);
    return EvaluationReport{std::move(rows)};
}

namespace {

void write_csv_line(std::ostream& out, const std::string& label, const MetricsRow& metrics) {
    out << label << ',' << format_metric(metrics.acc, "%.10g") << ','
        << format_metric(metrics.bcr, "%.10g") << ','
        << format_metric(metrics.sens, "%.10g") << ','
        << format_metric(metrics.spec, "%.10g") << ','
        << format_metric(metrics.f1, "%.10g") << ','
        << format_metric(metrics.mean4, "%.10g") << '\n';
}

}  // namespace

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
    out << "label,acc,bcr,sens,spec,f1,mean\n";
    for (const ReportRow& row : report.rows) {
        write_csv_line(out, row.label, row.metrics);
        for (std::size_t f = 0; f < row.fold_metrics.size(); ++f)
            write_csv_line(out, row.label + "[fold " + std::to_string(f + 1) + "]",
                           row.fold_metrics[f]);
    }
}

void write_report_table(std::ostream& out, const EvaluationReport& report) {
    std::size_t width = 14;
    for (const ReportRow& row : report.rows) width = std::max(width, row.label.size());

    auto pad = [&](const std::string& s, std::size_t w) {
        std::string padded = s;
        padded.resize(std::max(w, s.size()), ' ');
        return padded;
    };
    out << pad("Model/Ensemble", width) << "  acc    bcr    sens   spec   Mean\n";
    for (const ReportRow& row : report.rows) {
        out << pad(row.label, width) << "  " << format_metric(row.metrics.acc, "%.3f") << "  "
            << format_metric(row.metrics.bcr, "%.3f") << "  "
            << format_metric(row.metrics.sens, "%.3f") << "  "
            << format_metric(row.metrics.spec, "%.3f") << "  "
            << format_metric(row.metrics.mean4, "%.3f") << '\n';
    }
}

}  // namespace frauddet
