#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

namespace tailest::csv {

/// Shortest round-trip decimal representation ('.' decimal point).
std::string format(double v);
std::string format(std::uint64_t v);

/// Minimal comma-separated writer: header row, LF line endings.
class Writer {
public:
    void header(std::initializer_list<std::string> names);

    template <typename... Ts>
    void row(const Ts&... fields) {
        bool first = true;
        ((body_ += (first ? (first = false, "") : ","), body_ += as_field(fields)), ...);
        body_ += '\n';
    }

    const std::string& str() const { return body_; }
    void write_file(const std::string& path) const;

private:
    static std::string as_field(const std::string& s) { return s; }
    static std::string as_field(const char* s) { return s; }
    static std::string as_field(double v) { return format(v); }
    static std::string as_field(std::uint64_t v) { return format(v); }
    static std::string as_field(std::uint32_t v) { return format(std::uint64_t{v}); }
    static std::string as_field(int v) { return std::to_string(v); }

    std::string body_;
};

} // namespace tailest::csv
