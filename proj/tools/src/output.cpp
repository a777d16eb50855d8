#include "qbm/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace qbm::cli {

std::string format_number(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string render_csv(const SweepOutput& out, int precision) {
    std::string text;
    for (const auto& [name, value] : out.metadata) text += "# " + name + " = " + value + "\n";
    const bool with_status = !out.status.empty();
    for (std::size_t j = 0; j < out.header.size(); ++j) {
        if (j) text += ',';
        text += out.header[j];
    }
    if (with_status) text += ",status";
    text += '\n';
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        for (std::size_t j = 0; j < out.rows[i].size(); ++j) {
            if (j) text += ',';
            text += format_number(out.rows[i][j], precision);
        }
        if (with_status) {
            // keep the status a single CSV field
            std::string st = out.status[i];
            for (char& ch : st) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            text += ',' + st;
        }
        text += '\n';
    }
    return text;
}

std::string render_json(const SweepOutput& out, int precision) {
    nlohmann::ordered_json doc;
    auto& meta = doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : out.metadata) meta[name] = value;
    doc["columns"] = out.header;
    if (!out.status.empty()) doc["columns"].push_back("status");
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (double v : out.rows[i]) {
            if (std::isfinite(v)) {
                row.push_back(std::strtod(format_number(v, precision).c_str(), nullptr));
            } else {
                row.push_back(nullptr);
            }
        }
        if (!out.status.empty()) row.push_back(out.status[i]);
        rows.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

std::string render(const SweepOutput& out, Format format, int precision) {
    return format == Format::Csv ? render_csv(out, precision) : render_json(out, precision);
}

}  // namespace qbm::cli
