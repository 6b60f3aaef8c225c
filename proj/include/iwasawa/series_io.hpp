#pragma once

#include "iwasawa/series.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace iwasawa {

/// Schema violation on ingest; names the offending field.
class IngestError : public std::runtime_error {
public:
    IngestError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/**
 * The on-disk carrier for truncated series: UTF-8 JSON with schema
 * {p, N, M, kappa_gamma, coefficients[], metadata{}}. Coefficients are
 * base-10 non-negative integer strings, reduced mod p^N on load; emission
 * is canonical, so emit(ingest(x)) reproduces x up to whitespace.
 */
struct SeriesFileData {
    TruncatedSeries series;
    std::map<std::string, std::string> metadata;
};

SeriesFileData ingest(std::istream& in);
SeriesFileData ingest_file(const std::string& path);

void emit(const TruncatedSeries& series, const std::map<std::string, std::string>& metadata,
          std::ostream& out);
void emit_file(const TruncatedSeries& series, const std::map<std::string, std::string>& metadata,
               const std::string& path);

}  // namespace iwasawa
