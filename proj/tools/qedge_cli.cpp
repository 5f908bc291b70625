// Copyright 2026 The qedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qedge: success probabilities and asymptotics for quantum edge detection.
//
//   qedge curve --scenario unknown --d 2 --method srm --n 2:18:2,22:198:4
//   qedge asymptote --d 3
//   qedge verify all
//   qedge gram --d 2 --n 6 --block 1
//
// Exit codes: 0 ok, 1 usage, 2 partial results, 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qedge/qedge.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitVerify = 3;

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    bool open(const std::string& path) {
        if (path.empty() || path == "-") return true;
        file.open(path, std::ios::binary);
        if (!file) return false;
        os = &file;
        return true;
    }
};

struct CurveArgs {
    std::string scenario = "unknown";
    int d = 2;
    std::string n_spec;
    std::string method = "srm";
    double gap_tol = 1e-8;
    int threads = qedge::default_thread_count();
    int sdp_max_n = qedge::Capacity{}.sdp;
    int srm_max_n = qedge::Capacity{}.srm;
    std::string out;
    std::string format = "csv";
    bool verbose = false;
};

int cmd_curve(const CurveArgs& a) {
    std::vector<int> ns;
    try {
        ns = qedge::parse_range_spec(a.n_spec);
        qedge::StringParams check(1, a.d);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (ns.empty()) {
        std::cerr << "error: empty N list\n";
        return kExitUsage;
    }
    const auto scenario = a.scenario == "known" ? qedge::Scenario::knownUnknown : qedge::Scenario::unknownUnknown;
    const auto method = a.method == "sdp" ? qedge::Method::sdpOptimal : qedge::Method::srm;

    qedge::DiscriminationOptions opt;
    opt.gap_tol = a.gap_tol;
    opt.threads = a.threads;
    opt.capacity.sdp = a.sdp_max_n;
    opt.capacity.srm = a.srm_max_n;
    if (a.verbose) opt.diagnostics = &std::cerr;

    auto points = qedge::success_curve(scenario, a.d, ns, method, opt);

    Output out;
    if (!out.open(a.out)) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kExitUsage;
    }
    bool all_ok = true;
    for (const auto& p : points) all_ok = all_ok && p.status == "ok";

    if (a.format == "json") {
        json rows = json::array();
        for (const auto& p : points) {
            rows.push_back({{"N", p.n},
                            {"d", a.d},
                            {"scenario", a.scenario},
                            {"method", a.method},
                            {"p_success", number_or_null(p.total)},
                            {"gap", number_or_null(p.gap)},
                            {"status", p.status}});
        }
        json doc = {{"metadata",
                     {{"command", "curve"},
                      {"scenario", a.scenario},
                      {"d", a.d},
                      {"method", a.method},
                      {"n", a.n_spec},
                      {"gap_tol", a.gap_tol},
                      {"rank_tol", qedge::SdpOptions{}.rank_tol},
                      {"max_iterations", qedge::SdpOptions{}.max_iterations},
                      {"sdp_max_n", a.sdp_max_n},
                      {"srm_max_n", a.srm_max_n},
                      {"deterministic", true}}},
                    {"rows", rows}};
        *out.os << doc.dump(2) << "\n";
    } else {
        *out.os << "N,d,scenario,method,p_success,gap,status\n";
        for (const auto& p : points) {
            *out.os << p.n << ',' << a.d << ',' << a.scenario << ',' << a.method << ',' << fmt12(p.total) << ','
                    << fmt12(p.gap) << ',' << csv_field(p.status) << '\n';
        }
    }
    out.os->flush();
    if (!all_ok) {
        for (const auto& p : points)
            if (p.status != "ok") std::cerr << "N=" << p.n << ": " << p.status << "\n";
    }
    return all_ok ? kExitOk : kExitPartial;
}

struct AsymptoteArgs {
    int d = 2;
    bool estimate = false;
    int threads = qedge::default_thread_count();
    std::string out;
};

int cmd_asymptote(const AsymptoteArgs& a) {
    if (a.d < 2) {
        std::cerr << "error: d must be >= 2\n";
        return kExitUsage;
    }
    bool partial = false;
    json doc;
    doc["d"] = a.d;
    json errors = json::object();
    json orders = json::object();
    json reasons = json::object();

    std::optional<qedge::CoefficientTables> tables;
    try {
        tables = qedge::coefficient_tables_from_environment();
    } catch (const std::exception& e) {
        reasons["coefficient_table"] = e.what();
        partial = true;
    }
    auto pade_route = [&](const char* key, auto&& fn) {
        if (!tables) {
            doc[key] = nullptr;
            reasons[key] = "coefficient table unavailable";
            return;
        }
        try {
            const auto& t = qedge::coefficient_table(a.d, *tables);
            qedge::PadeEstimate e = fn(t);
            doc[key] = e.value;
            errors[key] = number_or_null(e.error);
            orders[key] = e.order;
        } catch (const qedge::NotTabulatedError& e) {
            doc[key] = nullptr;
            reasons[key] = e.what();
        } catch (const std::exception& e) {
            doc[key] = nullptr;
            reasons[key] = e.what();
            partial = true;
        }
    };
    pade_route("p0_pade_integral", [](const auto& t) { return qedge::p0_via_integral(t); });
    pade_route("p0_pade_primitive", [](const auto& t) { return qedge::p0_via_primitive(t); });
    if (doc["p0_pade_integral"].is_number() && doc["p0_pade_primitive"].is_number()) {
        const double lo = doc["p0_pade_integral"].get<double>();
        const double hi = doc["p0_pade_primitive"].get<double>();
        errors["route_half_spread"] = std::abs(hi - lo) / 2;
    }
    try {
        doc["p0_known"] = qedge::p0_known(a.d);
    } catch (const std::exception& e) {
        doc["p0_known"] = nullptr;
        reasons["p0_known"] = e.what();
        partial = true;
    }
    doc["large_d"] = qedge::large_d_limit(a.d);
    doc["error_estimates"] = errors;
    doc["pade_orders"] = orders;
    if (a.estimate) {
        try {
            qedge::EstimatorGrid grid;
            grid.threads = a.threads;
            json est = json::array();
            for (const auto& c : qedge::estimate_low_order_coeffs(a.d, 3, grid)) est.push_back({{"value", c.value}, {"error", c.error}});
            doc["estimated_coefficients"] = est;
        } catch (const std::exception& e) {
            doc["estimated_coefficients"] = nullptr;
            reasons["estimated_coefficients"] = e.what();
            partial = true;
        }
    }
    doc["reasons"] = reasons;

    Output out;
    if (!out.open(a.out)) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kExitUsage;
    }
    *out.os << doc.dump(2) << "\n";
    return partial ? kExitPartial : kExitOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 20240607;
    int threads = qedge::default_thread_count();
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<qedge::VerifyReport> reports;
    const bool all = a.suite == "all";
    if (all || a.suite == "oracle") reports.push_back(qedge::verify_oracle());
    if (all || a.suite == "tridiag") reports.push_back(qedge::verify_tridiag(50, a.seed));
    if (all || a.suite == "holevo") reports.push_back(qedge::verify_holevo(30, 1e-8, a.threads));
    bool ok = true;
    for (const auto& r : reports) {
        std::cout << r.suite << ": " << r.passed << " passed, " << r.failed << " failed, worst deviation " << r.worst << "\n";
        if (!r.ok()) {
            ok = false;
            std::cout << "  first counterexample: " << (r.first_failure.empty() ? "no cases ran" : r.first_failure) << "\n";
        }
    }
    return ok ? kExitOk : kExitVerify;
}

struct GramArgs {
    std::string scenario = "unknown";
    int d = 2;
    int n = 2;
    int block = 0;
    bool rescaled = false;
    std::string out;
};

int cmd_gram(const GramArgs& a) {
    try {
        qedge::SemiseparableGram g = a.scenario == "known" ? qedge::build_gram_known(a.n, a.d, a.block)
                                                           : qedge::build_gram_unknown(a.n, a.d, a.block);
        if (a.rescaled) g = qedge::rescale_gram(g);
        Output out;
        if (!out.open(a.out)) {
            std::cerr << "error: cannot write '" << a.out << "'\n";
            return kExitUsage;
        }
        qedge::write_gram_csv(*out.os, g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Success probabilities and asymptotics for quantum edge detection"};
    app.require_subcommand(1);

    CurveArgs curve;
    auto* c = app.add_subcommand("curve", "Total success probability over a range of string lengths (CSV or JSON)");
    c->add_option("--scenario", curve.scenario, "unknown: both domains unknown; known: one domain in |0>")
        ->check(CLI::IsMember({"unknown", "known"}));
    c->add_option("--d", curve.d, "Local dimension")->check(CLI::Range(2, 1 << 20));
    c->add_option("--n", curve.n_spec, "String lengths, start:stop:step segments joined by commas")->required();
    c->add_option("--method", curve.method, "srm or sdp")->check(CLI::IsMember({"srm", "sdp"}));
    c->add_option("--gap-tol", curve.gap_tol, "SDP duality-gap tolerance per block")->check(CLI::PositiveNumber);
    c->add_option("--threads", curve.threads, "Worker threads")->check(CLI::Range(1, 4096));
    c->add_option("--sdp-max-n", curve.sdp_max_n, "Largest N accepted by the SDP method")->check(CLI::PositiveNumber);
    c->add_option("--srm-max-n", curve.srm_max_n, "Largest N accepted by the SRM method")->check(CLI::PositiveNumber);
    c->add_option("--out", curve.out, "Output file (default stdout)");
    c->add_option("--format", curve.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_flag("--verbose", curve.verbose, "Per-block solver diagnostics on stderr");

    AsymptoteArgs asym;
    auto* s = app.add_subcommand("asymptote", "Large-N limits p0(d) as JSON");
    s->add_option("--d", asym.d, "Local dimension")->required()->check(CLI::Range(2, 1 << 20));
    s->add_flag("--estimate", asym.estimate, "Also estimate a_1..a_3 numerically (slow)");
    s->add_option("--threads", asym.threads, "Worker threads")->check(CLI::Range(1, 4096));
    s->add_option("--out", asym.out, "Output file (default stdout)");
    std::string asym_format = "json";
    s->add_option("--format", asym_format, "Output format")->check(CLI::IsMember({"json"}));

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run a property suite: oracle, tridiag, holevo or all");
    v->add_option("suite", ver.suite, "Suite name")->check(CLI::IsMember({"oracle", "tridiag", "holevo", "all"}));
    v->add_option("--seed", ver.seed, "Seed for the tridiag block sampler");
    v->add_option("--threads", ver.threads, "Worker threads")->check(CLI::Range(1, 4096));

    GramArgs gram;
    auto* g = app.add_subcommand("gram", "Dump one Gram block as CSV with k labels");
    g->add_option("--scenario", gram.scenario, "unknown or known")->check(CLI::IsMember({"unknown", "known"}));
    g->add_option("--d", gram.d, "Local dimension")->check(CLI::Range(2, 1 << 20));
    g->add_option("--n", gram.n, "String length")->check(CLI::PositiveNumber);
    g->add_option("--block", gram.block, "lambda (unknown) or n_tilde0 (known)");
    g->add_flag("--rescaled", gram.rescaled, "Apply the large-N rescaling (unknown scenario)");
    g->add_option("--out", gram.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c) return cmd_curve(curve);
        if (*s) return cmd_asymptote(asym);
        if (*v) return cmd_verify(ver);
        if (*g) return cmd_gram(gram);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitUsage;
}
