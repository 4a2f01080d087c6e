#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pmfix {

/// Shortest decimal string that round-trips the value (-0 is normalized to 0).
std::string format_double(double v);

/// Fixed 17-significant-digit form used by the orbit dump.
std::string format_double17(double v);

/// "[a, b, c]" with shortest round-trip entries.
std::string format_list(const std::vector<double>& values);

/// Emits the indentation-structured `key: value` report format. All CLI
/// reports go through this writer so output stays byte-deterministic.
class ReportWriter {
public:
    explicit ReportWriter(std::ostream& os) : os_(os) {}

    void line(std::string_view key, std::string_view value);
    void line(std::string_view key, const std::string& value) { line(key, std::string_view(value)); }
    void line(std::string_view key, const char* value) { line(key, std::string_view(value)); }
    void line(std::string_view key, double value) { line(key, format_double(value)); }
    void line(std::string_view key, bool value) { line(key, value ? "true" : "false"); }
    void line(std::string_view key, long long value) { line(key, std::to_string(value)); }
    void line(std::string_view key, int value) { line(key, std::to_string(value)); }

    /// Opens a nested section ("key:" followed by deeper indentation).
    void open(std::string_view key);
    void close();

    /// A raw, already-formatted line at the current indent.
    void item(std::string_view text);

private:
    std::ostream& os_;
    int depth_ = 0;

    void indent();
};

}  // namespace pmfix
