#include "pmfix/report.hpp"

#include <charconv>
#include <cstdio>

namespace pmfix {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    out += "]";
    return out;
}

void ReportWriter::indent() {
    for (int i = 0; i < depth_; ++i) os_ << "  ";
}

void ReportWriter::line(std::string_view key, std::string_view value) {
    indent();
    os_ << key << ": " << value << "\n";
}

void ReportWriter::open(std::string_view key) {
    indent();
    os_ << key << ":\n";
    ++depth_;
}

void ReportWriter::close() {
    if (depth_ > 0) --depth_;
}

void ReportWriter::item(std::string_view text) {
    indent();
    os_ << text << "\n";
}

}  // namespace pmfix
