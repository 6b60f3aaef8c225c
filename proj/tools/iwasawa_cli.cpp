// Command-line surface: invariant reports, theorem checkers, W-series and
// random-series generation, and the randomized property suites.
//
// Exit codes: 0 = all pass, 1 = theorem violation, 2 = inconclusive
// precision, 3 = input error.

#include "iwasawa/functional_equation.hpp"
#include "iwasawa/harness.hpp"
#include "iwasawa/invariants.hpp"
#include "iwasawa/series_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using iwasawa::Certificate;
using iwasawa::CheckStatus;
using iwasawa::Flavor;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;

Flavor parse_flavor(const std::string& s) {
    if (s == "generic") return Flavor::generic;
    if (s == "plus") return Flavor::plus;
    if (s == "minus") return Flavor::minus;
    throw CLI::ValidationError("--flavor", "must be generic, plus or minus");
}

ordered_json padic_json(const iwasawa::PadicInt& x) {
    return ordered_json{{"residue", x.to_string()}, {"precision", x.precision()}};
}

void print_json(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

ordered_json context_json(const iwasawa::ContextPtr& ctx, int cap) {
    return ordered_json{{"p", ctx->prime()},
                        {"N", ctx->precision()},
                        {"M", cap},
                        {"kappa_gamma", ctx->kappa_gamma_residue().get_str(10)}};
}

int status_exit(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return kExitPass;
        case CheckStatus::fail: return kExitViolation;
        case CheckStatus::inconclusive: return kExitInconclusive;
    }
    return kExitInputError;
}

int cmd_invariants(const std::string& file, const std::string& out) {
    auto data = iwasawa::ingest_file(file);
    iwasawa::InvariantReport r = iwasawa::invariant_report(data.series);
    ordered_json j;
    j["context"] = context_json(data.series.context(), data.series.cap());
    j["certificate"] = r.certificate == Certificate::conclusive ? "conclusive" : "inconclusive";
    if (r.mu) j["mu"] = *r.mu;
    if (r.lambda) j["lambda"] = *r.lambda;
    if (r.vanishing_order) j["vanishing_order"] = *r.vanishing_order;
    if (r.leading) j["leading"] = padic_json(*r.leading);
    if (r.subleading) j["subleading"] = padic_json(*r.subleading);
    if (r.certificate == Certificate::inconclusive) {
        auto s = iwasawa::suggest_raise(data.series.context(), data.series.cap());
        j["suggested_raise"] = ordered_json{{"N", s.precision}, {"M", s.cap}};
    }
    print_json(j, out);
    return r.certificate == Certificate::conclusive ? kExitPass : kExitInconclusive;
}

struct FEOptions {
    std::string file;
    long q = 1;
    int epsilon = -1;
    std::string flavor = "generic";
    std::string out;

    iwasawa::FEParams params(const iwasawa::ContextPtr& ctx) const {
        return iwasawa::FEParams::make(ctx, mpz_class(q), epsilon, parse_flavor(flavor));
    }
};

void add_fe_options(CLI::App* cmd, FEOptions& opt) {
    cmd->add_option("file", opt.file, "series file (JSON)")->required();
    cmd->add_option("--Q", opt.q, "tame level Q (conductor N for plus/minus)")->required();
    cmd->add_option("--epsilon", opt.epsilon, "functional-equation sign (+1 or -1)")->required();
    cmd->add_option("--flavor", opt.flavor, "generic | plus | minus");
    cmd->add_option("--out", opt.out, "write the report here instead of stdout");
}

int cmd_fe_check(const FEOptions& opt) {
    auto data = iwasawa::ingest_file(opt.file);
    auto params = opt.params(data.series.context());
    iwasawa::FECheckReport r = iwasawa::check_fe(data.series, params);
    ordered_json j;
    j["context"] = context_json(data.series.context(), data.series.cap());
    j["Q"] = opt.q;
    j["epsilon"] = opt.epsilon;
    j["flavor"] = opt.flavor;
    j["pass"] = r.pass;
    j["digits_verified"] = r.digits_verified;
    j["cap_verified"] = r.cap_verified;
    print_json(j, opt.out);
    return r.pass ? kExitPass : kExitViolation;
}

int cmd_parity(const FEOptions& opt) {
    auto data = iwasawa::ingest_file(opt.file);
    auto params = opt.params(data.series.context());
    iwasawa::ParityReport r = iwasawa::parity_check(data.series, params);
    ordered_json j;
    j["context"] = context_json(data.series.context(), data.series.cap());
    j["status"] = iwasawa::status_name(r.status);
    j["fe_digits_verified"] = r.fe.digits_verified;
    j["predicted_parity"] = r.predicted_parity == 0 ? "even" : "odd";
    if (r.vanishing_order) j["vanishing_order"] = *r.vanishing_order;
    if (r.status == CheckStatus::inconclusive) {
        auto s = iwasawa::suggest_raise(data.series.context(), data.series.cap());
        j["suggested_raise"] = ordered_json{{"N", s.precision}, {"M", s.cap}};
    }
    print_json(j, opt.out);
    return status_exit(r.status);
}

int cmd_taylor(const FEOptions& opt) {
    auto data = iwasawa::ingest_file(opt.file);
    const auto& ctx = data.series.context();
    Flavor flavor = parse_flavor(opt.flavor);
    iwasawa::TaylorReport r;
    if (flavor == Flavor::generic) {
        r = iwasawa::taylor_relation(data.series, opt.params(ctx));
    } else {
        auto curve = iwasawa::CurveContext::make(mpz_class(opt.q), ctx->prime(), 0, opt.epsilon);
        r = iwasawa::pm_taylor_relation(data.series, flavor, curve, ctx);
    }
    ordered_json j;
    j["context"] = context_json(ctx, data.series.cap());
    j["status"] = iwasawa::status_name(r.status);
    j["digits_verified"] = r.digits_verified;
    if (r.vanishing_order) j["vanishing_order"] = *r.vanishing_order;
    if (r.leading) j["leading"] = padic_json(*r.leading);
    if (r.subleading) j["subleading"] = padic_json(*r.subleading);
    if (r.residual) j["residual"] = padic_json(*r.residual);
    if (r.status == CheckStatus::inconclusive) {
        auto s = iwasawa::suggest_raise(ctx, data.series.cap());
        j["suggested_raise"] = ordered_json{{"N", s.precision}, {"M", s.cap}};
    }
    print_json(j, opt.out);
    return status_exit(r.status);
}

int cmd_wseries(unsigned long p, const std::string& flavor, int n, int cap,
                const std::string& out) {
    auto ctx = iwasawa::PadicContext::make(p, n);
    Flavor fl = parse_flavor(flavor);
    if (fl == Flavor::generic) throw CLI::ValidationError("--flavor", "must be plus or minus");
    iwasawa::TruncatedSeries w = iwasawa::w_series(fl, ctx, cap);
    // Cross-check against the truncated defining product before emitting.
    if (!iwasawa::w_series_product(fl, ctx, cap).equal_at_common_precision(w)) {
        std::cerr << "wseries: closed form disagrees with the truncated product\n";
        return kExitViolation;
    }
    std::map<std::string, std::string> meta{{"flavor", flavor}, {"kind", "w_series"}};
    if (out.empty()) iwasawa::emit(w, meta, std::cout);
    else iwasawa::emit_file(w, meta, out);
    return kExitPass;
}

int cmd_gen(unsigned long p, const std::string& profile, std::uint64_t seed, int n, int cap,
            const std::string& out) {
    int mu = -1, lambda = -1;
    {
        std::istringstream is(profile);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--profile", "expected k=v pairs");
            std::string key = tok.substr(0, eq);
            int val = std::stoi(tok.substr(eq + 1));
            if (key == "mu") mu = val;
            else if (key == "lambda") lambda = val;
            else throw CLI::ValidationError("--profile", "unknown key " + key);
        }
    }
    if (mu < 0 || lambda < 0)
        throw CLI::ValidationError("--profile", "must set mu= and lambda=");
    auto ctx = iwasawa::PadicContext::make(p, n);
    iwasawa::TruncatedSeries f = iwasawa::random_series(ctx, cap, {mu, lambda, seed});
    std::map<std::string, std::string> meta{{"kind", "random_series"},
                                            {"mu", std::to_string(mu)},
                                            {"lambda", std::to_string(lambda)},
                                            {"seed", std::to_string(seed)}};
    if (out.empty()) iwasawa::emit(f, meta, std::cout);
    else iwasawa::emit_file(f, meta, out);
    return kExitPass;
}

iwasawa::SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw iwasawa::IngestError("(document)", "cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    iwasawa::SuiteConfig cfg;
    if (j.contains("primes")) cfg.primes = j.at("primes").get<std::vector<unsigned long>>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("N")) cfg.precision = j.at("N").get<int>();
    if (j.contains("M")) cfg.cap = j.at("M").get<int>();
    if (j.contains("loss_budgets")) {
        const auto& b = j.at("loss_budgets");
        if (b.contains("taylor_delta_odd")) cfg.taylor_budget_odd = b.at("taylor_delta_odd").get<int>();
        if (b.contains("taylor_delta_p2")) cfg.taylor_budget_p2 = b.at("taylor_delta_p2").get<int>();
    }
    if (j.contains("suites")) {
        cfg.suites.clear();
        for (const auto& s : j.at("suites")) {
            std::string name = s.get<std::string>();
            if (name == "invariance") cfg.suites.insert(iwasawa::SuiteKind::invariance);
            else if (name == "parity") cfg.suites.insert(iwasawa::SuiteKind::parity);
            else if (name == "taylor") cfg.suites.insert(iwasawa::SuiteKind::taylor);
            else if (name == "wseries") cfg.suites.insert(iwasawa::SuiteKind::wseries);
            else if (name == "fe") cfg.suites.insert(iwasawa::SuiteKind::fe);
            else throw iwasawa::IngestError("suites", "unknown suite " + name);
        }
    }
    return cfg;
}

ordered_json report_json(const iwasawa::SuiteReport& report) {
    ordered_json j;
    ordered_json cfg;
    cfg["primes"] = report.config.primes;
    cfg["trials"] = report.config.trials;
    cfg["seed"] = report.config.seed;
    cfg["N"] = report.config.precision;
    cfg["M"] = report.config.cap;
    j["config"] = cfg;
    ordered_json suites = ordered_json::object();
    for (const auto& [kind, tally] : report.tallies) {
        ordered_json t;
        t["trials"] = tally.trials;
        t["passed"] = tally.passed;
        t["failed"] = tally.failed;
        t["inconclusive"] = tally.inconclusive;
        if (tally.min_digits_verified >= 0) t["min_digits_verified"] = tally.min_digits_verified;
        t["duration_ms"] = tally.duration_ms;
        suites[iwasawa::suite_name(kind)] = t;
    }
    j["suites"] = suites;
    ordered_json fails = ordered_json::array();
    for (const auto& f : report.failures) {
        fails.push_back(ordered_json{{"suite", iwasawa::suite_name(f.suite)},
                                     {"p", f.p},
                                     {"trial", f.trial},
                                     {"seed", f.seed},
                                     {"message", f.message}});
    }
    j["failures"] = fails;
    ordered_json inc = ordered_json::array();
    for (const auto& i : report.inconclusives) {
        inc.push_back(ordered_json{{"suite", iwasawa::suite_name(i.suite)},
                                   {"p", i.p},
                                   {"trial", i.trial},
                                   {"seed", i.seed},
                                   {"suggested_N", i.suggested.precision},
                                   {"suggested_M", i.suggested.cap}});
    }
    j["inconclusives"] = inc;
    j["total_ms"] = report.total_ms;
    j["result"] = report.failures.empty()
                      ? (report.inconclusives.empty() ? "pass" : "inconclusive")
                      : "fail";
    return j;
}

int cmd_suite(const std::string& config_path, const std::string& out) {
    iwasawa::SuiteConfig cfg =
        config_path.empty() ? iwasawa::SuiteConfig{} : load_suite_config(config_path);
    iwasawa::SuiteReport report = iwasawa::run_suite(cfg);
    print_json(report_json(report), out);
    for (const auto& f : report.failures)
        std::cerr << "failure: " << f.message << " (reproduce with seed " << f.seed << ")\n";
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-precision Iwasawa-algebra toolkit: invariants, functional-equation "
                 "checkers, and randomized verification suites"};
    app.require_subcommand(1);

    std::string file, out;
    auto* inv = app.add_subcommand("invariants", "mu, lambda and Taylor data of a series file");
    inv->add_option("file", file, "series file (JSON)")->required();
    inv->add_option("--out", out, "write the report here instead of stdout");

    FEOptions fe_opt, parity_opt, taylor_opt;
    add_fe_options(app.add_subcommand("fe-check", "verify the functional equation"), fe_opt);
    add_fe_options(app.add_subcommand("parity", "verify (-1)^m = -epsilon"), parity_opt);
    add_fe_options(app.add_subcommand("taylor", "verify the leading/sub-leading relation"),
                   taylor_opt);

    unsigned long wp = 3;
    std::string wflavor = "plus", wout;
    int wn = 40, wcap = iwasawa::TruncatedSeries::kDefaultCap;
    auto* ws = app.add_subcommand("wseries", "emit W^+ or W^- as a series file");
    ws->add_option("--p", wp, "prime")->required();
    ws->add_option("--flavor", wflavor, "plus | minus")->required();
    ws->add_option("--N", wn, "working precision");
    ws->add_option("--M", wcap, "coefficient cap");
    ws->add_option("--out", wout, "write the series here instead of stdout");

    unsigned long gp = 3;
    std::string gprofile, gout;
    std::uint64_t gseed = 1;
    int gn = 40, gcap = iwasawa::TruncatedSeries::kDefaultCap;
    auto* gen = app.add_subcommand("gen", "generate a random series with target invariants");
    gen->add_option("--p", gp, "prime")->required();
    gen->add_option("--profile", gprofile, "targets, e.g. mu=2,lambda=3")->required();
    gen->add_option("--seed", gseed, "generator seed")->required();
    gen->add_option("--N", gn, "working precision");
    gen->add_option("--M", gcap, "coefficient cap");
    gen->add_option("--out", gout, "write the series here instead of stdout");

    std::string suite_config, suite_out;
    auto* suite = app.add_subcommand("suite", "run the randomized property suites");
    suite->add_option("--config", suite_config, "suite configuration (JSON)");
    suite->add_option("--out", suite_out, "write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) return cmd_invariants(file, out);
        if (app.get_subcommand("fe-check")->parsed()) return cmd_fe_check(fe_opt);
        if (app.get_subcommand("parity")->parsed()) return cmd_parity(parity_opt);
        if (app.get_subcommand("taylor")->parsed()) return cmd_taylor(taylor_opt);
        if (ws->parsed()) return cmd_wseries(wp, wflavor, wn, wcap, wout);
        if (gen->parsed()) return cmd_gen(gp, gprofile, gseed, gn, gcap, gout);
        if (suite->parsed()) return cmd_suite(suite_config, suite_out);
    } catch (const iwasawa::IngestError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
