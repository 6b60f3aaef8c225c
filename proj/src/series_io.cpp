#include "iwasawa/series_io.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>

namespace iwasawa {

namespace {

using ordered_json = nlohmann::ordered_json;

long field_integer(const nlohmann::json& j, const char* name, long lo, long hi) {
    if (!j.contains(name)) throw IngestError(name, "missing field");
    const auto& v = j.at(name);
    if (!v.is_number_integer()) throw IngestError(name, "must be an integer");
    long x = v.get<long>();
    if (x < lo || x > hi) throw IngestError(name, "out of range");
    return x;
}

mpz_class parse_decimal(const std::string& s, const std::string& field) {
    if (s.empty()) throw IngestError(field, "empty integer string");
    for (char ch : s)
        if (ch < '0' || ch > '9') throw IngestError(field, "not a base-10 non-negative integer");
    return mpz_class(s, 10);
}

}  // namespace

SeriesFileData ingest(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError("(document)", e.what());
    }
    if (!j.is_object()) throw IngestError("(document)", "top level must be an object");

    long p = field_integer(j, "p", 2, std::numeric_limits<long>::max());
    if (!PadicContext::is_prime(mpz_class(p))) throw IngestError("p", "not prime");
    long n = field_integer(j, "N", 8, 1 << 20);
    long cap = field_integer(j, "M", 1, 1 << 20);

    if (!j.contains("kappa_gamma")) throw IngestError("kappa_gamma", "missing field");
    if (!j.at("kappa_gamma").is_string()) throw IngestError("kappa_gamma", "must be a string");
    mpz_class kappa = parse_decimal(j.at("kappa_gamma").get<std::string>(), "kappa_gamma");

    ContextPtr ctx;
    try {
        ctx = PadicContext::make(static_cast<unsigned long>(p), static_cast<int>(n), kappa);
    } catch (const std::invalid_argument& e) {
        throw IngestError("kappa_gamma", e.what());
    }

    if (!j.contains("coefficients")) throw IngestError("coefficients", "missing field");
    const auto& coeffs = j.at("coefficients");
    if (!coeffs.is_array()) throw IngestError("coefficients", "must be an array");
    if (static_cast<long>(coeffs.size()) != cap)
        throw IngestError("coefficients",
                          "length " + std::to_string(coeffs.size()) + " != M = " + std::to_string(cap));

    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        std::string field = "coefficients[" + std::to_string(i) + "]";
        if (!coeffs[i].is_string()) throw IngestError(field, "must be a string");
        v.push_back(parse_decimal(coeffs[i].get<std::string>(), field));
    }

    SeriesFileData out{TruncatedSeries(ctx, static_cast<int>(cap), std::move(v), static_cast<int>(n)),
                       {}};
    if (j.contains("metadata")) {
        const auto& meta = j.at("metadata");
        if (!meta.is_object()) throw IngestError("metadata", "must be an object");
        for (auto it = meta.begin(); it != meta.end(); ++it) {
            if (!it.value().is_string())
                throw IngestError("metadata." + it.key(), "must be a string");
            out.metadata[it.key()] = it.value().get<std::string>();
        }
    }
    return out;
}

SeriesFileData ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("(document)", "cannot open " + path);
    return ingest(in);
}

void emit(const TruncatedSeries& series, const std::map<std::string, std::string>& metadata,
          std::ostream& out) {
    const auto& ctx = series.context();
    ordered_json j;
    j["p"] = ctx->prime();
    j["N"] = series.achieved_precision();
    j["M"] = series.cap();
    j["kappa_gamma"] = ctx->kappa_gamma_residue().get_str(10);
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < series.cap(); ++i) arr.push_back(series.coeff_residue(i).get_str(10));
    j["coefficients"] = std::move(arr);
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
    out << j.dump(2) << "\n";
}

void emit_file(const TruncatedSeries& series, const std::map<std::string, std::string>& metadata,
               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("(document)", "cannot open " + path + " for writing");
    emit(series, metadata, out);
}

}  // namespace iwasawa
