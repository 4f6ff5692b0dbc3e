#include "fanova/sample_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fanova {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    std::string t = text;
    // tolerate surrounding whitespace and CR from CRLF files
    while (!t.empty() && (t.back() == '\r' || t.back() == ' ' || t.back() == '\t')) t.pop_back();
    std::size_t start = 0;
    while (start < t.size() && (t[start] == ' ' || t[start] == '\t')) ++start;
    t = t.substr(start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw std::runtime_error("non-numeric " + what + ": '" + text + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

FunctionalSample load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sample file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty sample file: " + path);
    }
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "group") {
        throw std::runtime_error("sample CSV header must be 'group,<t1>,<t2>,...'");
    }
    std::vector<double> times;
    times.reserve(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c) {
        times.push_back(parse_number(header[c], "header time"));
    }
    for (std::size_t c = 1; c < times.size(); ++c) {
        if (times[c] <= times[c - 1]) {
            throw std::runtime_error("header times must be strictly increasing");
        }
    }
    const std::size_t m = times.size();

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<double>>> by_label;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != m + 1) {
            throw std::runtime_error("row " + std::to_string(lineno) + " has " +
                                     std::to_string(fields.size() - 1) + " values, expected " +
                                     std::to_string(m));
        }
        std::vector<double> curve(m);
        for (std::size_t c = 0; c < m; ++c) {
            curve[c] = parse_number(fields[c + 1], "cell at row " + std::to_string(lineno));
        }
        auto it = by_label.find(fields[0]);
        if (it == by_label.end()) {
            order.push_back(fields[0]);
            it = by_label.emplace(fields[0], std::vector<std::vector<double>>{}).first;
        }
        it->second.push_back(std::move(curve));
    }

    if (order.size() < 2) {
        throw std::runtime_error("need at least 2 groups");
    }
    std::vector<GroupData> groups;
    groups.reserve(order.size());
    for (const auto& label : order) {
        const auto& rows = by_label[label];
        if (rows.size() < 2) {
            throw std::runtime_error("group '" + label + "' needs at least 2 curves");
        }
        Matrix curves(rows.size(), m);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            for (std::size_t l = 0; l < m; ++l) {
                curves(j, l) = rows[j][l];
            }
        }
        groups.push_back({label, std::move(curves)});
    }
    return FunctionalSample(Grid(std::move(times)), std::move(groups));
}

FunctionalSample load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sample file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.contains("grid") || !j.contains("groups")) {
        throw std::runtime_error("sample JSON needs 'grid' and 'groups'");
    }
    std::vector<double> times = j.at("grid").get<std::vector<double>>();
    std::vector<GroupData> groups;
    for (const auto& jg : j.at("groups")) {
        std::string label = jg.at("label").get<std::string>();
        auto rows = jg.at("curves").get<std::vector<std::vector<double>>>();
        if (rows.empty()) {
            throw std::runtime_error("group '" + label + "' has no curves");
        }
        Matrix curves(rows.size(), times.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != times.size()) {
                throw std::runtime_error("group '" + label + "' has a curve of length " +
                                         std::to_string(rows[r].size()));
            }
            for (std::size_t c = 0; c < times.size(); ++c) {
                curves(r, c) = rows[r][c];
            }
        }
        groups.push_back({std::move(label), std::move(curves)});
    }
    return FunctionalSample(Grid(std::move(times)), std::move(groups));
}

void save_csv(const FunctionalSample& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write sample file: " + path);
    }
    out << "group";
    for (double t : s.grid().points()) {
        out << ',' << format_double(t);
    }
    out << '\n';
    for (const auto& g : s.groups()) {
        for (std::size_t j = 0; j < g.curves.rows(); ++j) {
            out << g.label;
            const double* y = g.curves.row(j);
            for (std::size_t l = 0; l < s.grid_size(); ++l) {
                out << ',' << format_double(y[l]);
            }
            out << '\n';
        }
    }
}

void save_json(const FunctionalSample& s, const std::string& path) {
    nlohmann::json j;
    j["grid"] = s.grid().points();
    j["groups"] = nlohmann::json::array();
    for (const auto& g : s.groups()) {
        nlohmann::json jg;
        jg["label"] = g.label;
        auto rows = nlohmann::json::array();
        for (std::size_t r = 0; r < g.curves.rows(); ++r) {
            rows.push_back(std::vector<double>(g.curves.row(r), g.curves.row(r) + g.curves.cols()));
        }
        jg["curves"] = std::move(rows);
        j["groups"].push_back(std::move(jg));
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write sample file: " + path);
    }
    out << j.dump(2) << '\n';
}

} // namespace

FunctionalSample load_sample(const std::string& path, SampleFormat format) {
    return format == SampleFormat::csv ? load_csv(path) : load_json(path);
}

void save_sample(const FunctionalSample& s, const std::string& path, SampleFormat format) {
    if (format == SampleFormat::csv) {
        save_csv(s, path);
    } else {
        save_json(s, path);
    }
}

SampleFormat format_from_path(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        return SampleFormat::json;
    }
    return SampleFormat::csv;
}

} // namespace fanova
