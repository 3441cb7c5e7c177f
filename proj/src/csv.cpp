#include "nnosim/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nnosim/errors.hpp"

namespace nnosim {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw IngestError("cannot open for writing: " + path.string());
    }
    if (!header.empty()) {
        out << header << '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << fmt_double(row[i]);
        }
        out << '\n';
    }
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          int skip_rows) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open: " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno <= skip_rows) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos
                                                      ? std::string::npos
                                                      : comma - start);
            char* end = nullptr;
            errno = 0;
            double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0' || errno == ERANGE) {
                throw IngestError(path.string() + ":" + std::to_string(lineno) +
                                  ": non-numeric cell '" + cell + "'");
            }
            row.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IngestError(path.string() + ":" + std::to_string(lineno) +
                              ": ragged row (" + std::to_string(row.size()) +
                              " cells, expected " + std::to_string(rows.front().size()) + ")");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IngestError("cannot open for writing: " + path.string());
    }
    out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace nnosim
