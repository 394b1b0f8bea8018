#include "tailest/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace tailest::csv {

std::string format(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format(std::uint64_t v) {
    return std::to_string(v);
}

void Writer::header(std::initializer_list<std::string> names) {
    bool first = true;
    for (const auto& n : names) {
        if (!first) body_ += ',';
        first = false;
        body_ += n;
    }
    body_ += '\n';
}

void Writer::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << body_;
}

} // namespace tailest::csv
