#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// CSV emission: fixed header row, full double precision (17 significant
// digits), one artifact per file.

namespace iwt {

inline std::string format_g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path), columns_(header.size()) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_)
            throw std::logic_error("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << format_g17(values[i]);
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t columns_;
};

}  // namespace iwt
