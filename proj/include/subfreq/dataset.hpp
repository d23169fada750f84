#ifndef SUBFREQ_DATASET_HPP
#define SUBFREQ_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subfreq/errors.hpp"

namespace subfreq {

/// An n x d array of symbols over the alphabet {0, ..., q-1}.
/// Immutable after construction; rows are stored row-major.
class Dataset {
public:
    Dataset() : Dataset(0, 0, 2, {}) {}
    Dataset(std::size_t n, std::size_t d, std::uint32_t q, std::vector<std::uint32_t> cells);

    static Dataset from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                             std::size_t d, std::uint32_t q);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    std::uint32_t alphabet() const { return q_; }

    std::span<const std::uint32_t> row(std::size_t i) const {
        return {cells_.data() + i * d_, d_};
    }

    bool operator==(const Dataset& other) const = default;

private:
    std::size_t n_;
    std::size_t d_;
    std::uint32_t q_;
    std::vector<std::uint32_t> cells_;
};

/// Ordered subset of column indices; strictly increasing, each < d of the
/// dataset it is applied to.
class ColumnQuery {
public:
    ColumnQuery() = default;
    explicit ColumnQuery(std::vector<std::uint32_t> columns);

    // Parses a comma-separated 0-indexed column list, e.g. "0,1,5".
    // The empty string denotes the empty query.
    static ColumnQuery parse(std::string_view text);

    static ColumnQuery identity(std::size_t d);

    std::size_t size() const { return columns_.size(); }
    std::uint32_t operator[](std::size_t i) const { return columns_[i]; }
    const std::vector<std::uint32_t>& columns() const { return columns_; }
    std::uint32_t max_index() const;

    std::string to_string() const;

    bool operator==(const ColumnQuery& other) const = default;

private:
    std::vector<std::uint32_t> columns_;
};

// Text format: line 1 = "n d q"; then n lines of d space-separated symbols.
// Lines starting with '#' are comments and are skipped.
Dataset load_dataset(std::istream& in, const std::string& name = "<stream>");
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& a, std::ostream& out, const std::string& header_comment = "");
void save_dataset(const Dataset& a, const std::string& path, const std::string& header_comment = "");

Dataset project(const Dataset& a, const ColumnQuery& c);

// Throws capacity_error unless patterns of length `len` over [q] fit in a
// 64-bit id, i.e. len*log2(q) <= 63.
void check_pattern_capacity(std::size_t len, std::uint32_t q);

// Base-q evaluation of the word, most-significant symbol first.
std::uint64_t encode_pattern(std::span<const std::uint32_t> word, std::uint32_t q);
std::vector<std::uint32_t> decode_pattern(std::uint64_t id, std::size_t len, std::uint32_t q);

}  // namespace subfreq

#endif
