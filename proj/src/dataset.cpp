#include "subfreq/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace subfreq {

Dataset::Dataset(std::size_t n, std::size_t d, std::uint32_t q, std::vector<std::uint32_t> cells)
    : n_(n), d_(d), q_(q), cells_(std::move(cells)) {
    if (q < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (cells_.size() != n * d) throw std::invalid_argument("cell count does not match n*d");
    for (std::uint32_t s : cells_) {
        if (s >= q) throw std::invalid_argument("symbol out of range for alphabet");
    }
}

Dataset Dataset::from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                           std::size_t d, std::uint32_t q) {
    std::vector<std::uint32_t> cells;
    cells.reserve(rows.size() * d);
    for (const auto& r : rows) {
        if (r.size() != d) throw std::invalid_argument("row of wrong length");
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return Dataset(rows.size(), d, q, std::move(cells));
}

ColumnQuery::ColumnQuery(std::vector<std::uint32_t> columns) : columns_(std::move(columns)) {
    for (std::size_t i = 1; i < columns_.size(); ++i) {
        if (columns_[i] <= columns_[i - 1])
            throw std::invalid_argument("column indices must be strictly increasing");
    }
}

ColumnQuery ColumnQuery::parse(std::string_view text) {
    std::vector<std::uint32_t> cols;
    if (!text.empty()) {
        std::string item;
        std::istringstream ss{std::string(text)};
        while (std::getline(ss, item, ',')) {
            std::size_t pos = 0;
            unsigned long v;
            try {
                v = std::stoul(item, &pos);
            } catch (const std::exception&) {
                throw parse_error("bad column index '" + item + "'");
            }
            if (pos != item.size()) throw parse_error("bad column index '" + item + "'");
            cols.push_back(static_cast<std::uint32_t>(v));
        }
    }
    return ColumnQuery(std::move(cols));
}

ColumnQuery ColumnQuery::identity(std::size_t d) {
    std::vector<std::uint32_t> cols(d);
    for (std::size_t i = 0; i < d; ++i) cols[i] = static_cast<std::uint32_t>(i);
    return ColumnQuery(std::move(cols));
}

std::uint32_t ColumnQuery::max_index() const {
    return columns_.empty() ? 0 : columns_.back();
}

std::string ColumnQuery::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(columns_[i]);
    }
    return out;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

Dataset load_dataset(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno))
        throw parse_error(name + ": missing header line");
    std::istringstream header(line);
    long long n, d, q;
    if (!(header >> n >> d >> q) || n < 0 || d < 0 || q < 2)
        throw parse_error(name + ": malformed header, expected \"n d q\"", lineno);
    std::string extra;
    if (header >> extra)
        throw parse_error(name + ": trailing tokens after header", lineno);

    std::vector<std::uint32_t> cells;
    cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (long long i = 0; i < n; ++i) {
        if (!next_content_line(in, line, lineno))
            throw parse_error(name + ": expected " + std::to_string(n) + " rows, got " +
                              std::to_string(i));
        std::istringstream row(line);
        long long s;
        for (long long j = 0; j < d; ++j) {
            if (!(row >> s))
                throw parse_error(name + ": row of wrong length", lineno);
            if (s < 0 || s >= q)
                throw parse_error(name + ": symbol " + std::to_string(s) +
                                  " out of range for alphabet " + std::to_string(q), lineno);
            cells.push_back(static_cast<std::uint32_t>(s));
        }
        if (row >> s)
            throw parse_error(name + ": row of wrong length", lineno);
    }
    return Dataset(static_cast<std::size_t>(n), static_cast<std::size_t>(d),
                   static_cast<std::uint32_t>(q), std::move(cells));
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open file");
    return load_dataset(in, path);
}

void save_dataset(const Dataset& a, std::ostream& out, const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    out << a.rows() << ' ' << a.cols() << ' ' << a.alphabet() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out << ' ';
            out << r[j];
        }
        out << '\n';
    }
}

void save_dataset(const Dataset& a, const std::string& path, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw parse_error(path + ": cannot open file for writing");
    save_dataset(a, out, header_comment);
}

Dataset project(const Dataset& a, const ColumnQuery& c) {
    if (c.size() > 0 && c.max_index() >= a.cols())
        throw std::invalid_argument("column index out of range for dataset");
    std::vector<std::uint32_t> cells;
    cells.reserve(a.rows() * c.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        for (std::uint32_t j : c.columns()) cells.push_back(r[j]);
    }
    return Dataset(a.rows(), c.size(), a.alphabet(), std::move(cells));
}

void check_pattern_capacity(std::size_t len, std::uint32_t q) {
    if (double(len) * std::log2(double(q)) > 63.0)
        throw capacity_error("pattern id for length " + std::to_string(len) + " over alphabet " +
                             std::to_string(q) + " exceeds 64-bit capacity");
}

std::uint64_t encode_pattern(std::span<const std::uint32_t> word, std::uint32_t q) {
    check_pattern_capacity(word.size(), q);
    std::uint64_t id = 0;
    for (std::uint32_t s : word) {
        if (s >= q) throw std::invalid_argument("symbol out of range for alphabet");
        id = id * q + s;
    }
    return id;
}

std::vector<std::uint32_t> decode_pattern(std::uint64_t id, std::size_t len, std::uint32_t q) {
    check_pattern_capacity(len, q);
    std::vector<std::uint32_t> word(len);
    for (std::size_t i = len; i-- > 0;) {
        word[i] = static_cast<std::uint32_t>(id % q);
        id /= q;
    }
    if (id != 0) throw std::invalid_argument("pattern id out of range for given length");
    return word;
}

}  // namespace subfreq
