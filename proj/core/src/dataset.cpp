#include "qsvm/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && !field.empty();
}

struct RawTable {
    std::vector<std::vector<double>> rows;
    std::vector<int> lineNumbers;
};

RawTable read_numeric_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    RawTable table;
    std::string line;
    int line_number = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        const auto fields = split_fields(view);

        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_double(fields[i], row[i])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (header_allowed) {  // one leading header line is tolerated
                header_allowed = false;
                continue;
            }
            throw InputError(path + ": line " + std::to_string(line_number) +
                             " is not numeric");
        }
        header_allowed = false;
        table.rows.push_back(std::move(row));
        table.lineNumbers.push_back(line_number);
    }
    return table;
}

}  // namespace

TrainingSet load_dataset(const std::string& path) {
    const RawTable table = read_numeric_rows(path);
    if (table.rows.empty()) {
        throw InputError(path + ": no rows");
    }
    const std::size_t width = table.rows[0].size();
    if (width < 2) {
        throw InputError(path + ": line " + std::to_string(table.lineNumbers[0]) +
                         " needs at least one feature column and a label");
    }
    std::vector<Eigen::VectorXd> vectors;
    std::vector<int> labels;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const int line = table.lineNumbers[r];
        if (row.size() != width) {
            throw InputError(path + ": line " + std::to_string(line) + " has " +
                             std::to_string(row.size()) + " columns, expected " +
                             std::to_string(width));
        }
        const double label = row.back();
        if (label != 1.0 && label != -1.0) {
            throw InputError(path + ": line " + std::to_string(line) + " label " +
                             std::to_string(label) + " is not +1 or -1");
        }
        Eigen::VectorXd x(width - 1);
        for (std::size_t i = 0; i + 1 < row.size(); ++i) x[static_cast<Eigen::Index>(i)] = row[i];
        if (x.norm() == 0.0) {
            throw InputError(path + ": line " + std::to_string(line) +
                             " is the all-zero vector");
        }
        vectors.push_back(std::move(x));
        labels.push_back(label > 0 ? 1 : -1);
    }
    if (vectors.size() < 2) {
        throw InputError(path + ": need at least two training rows, got " +
                         std::to_string(vectors.size()));
    }
    return TrainingSet(std::move(vectors), std::move(labels));
}

std::vector<Eigen::VectorXd> load_queries(const std::string& path, int expected_dimension) {
    const RawTable table = read_numeric_rows(path);
    if (table.rows.empty()) {
        throw InputError(path + ": no rows");
    }
    std::vector<Eigen::VectorXd> queries;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const int line = table.lineNumbers[r];
        if (static_cast<int>(row.size()) != expected_dimension) {
            throw InputError(path + ": line " + std::to_string(line) + " has " +
                             std::to_string(row.size()) + " columns, expected " +
                             std::to_string(expected_dimension));
        }
        Eigen::VectorXd q(expected_dimension);
        for (int i = 0; i < expected_dimension; ++i) q[i] = row[i];
        queries.push_back(std::move(q));
    }
    return queries;
}

}  // namespace qsvm
