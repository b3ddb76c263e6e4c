#pragma once

// Batch job dispatch shared by the CLI binary and the test suites. One job
// in, one JSON result out, plus optional CSV side files.
//
// Exit codes: 0 analysis completed (whatever the verdict), 2 undecided,
// 3 invalid input, 4 internal constraint violation.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gevrey/serialize.hpp"

namespace gevrey {

enum class JobCommand { Classify, Sector, Simulate, Estimate, Counterexample, Verify };

inline constexpr int kSchemaVersion = 1;

struct JobSpec {
    JobCommand command = JobCommand::Classify;
    SpectrumSpec spectrum;
    std::optional<double> beta;
    std::optional<GevreyType> variant;
    std::optional<StateVector> vector;
    std::vector<double> t_grid;
    std::vector<double> s_grid;
    std::optional<std::pair<std::int64_t, std::int64_t>> n_window;
    std::optional<AdversarialKind> kind;
    std::optional<double> b_minus;
    std::optional<std::string> output_path;
    std::int64_t truncation = kDefaultTruncation;
};

struct JobResult {
    int exit_code = 0;
    Json body;
};

namespace detail {

inline JobCommand command_from_string(const std::string& s) {
    if (s == "classify") return JobCommand::Classify;
    if (s == "sector") return JobCommand::Sector;
    if (s == "simulate") return JobCommand::Simulate;
    if (s == "estimate") return JobCommand::Estimate;
    if (s == "counterexample") return JobCommand::Counterexample;
    if (s == "verify") return JobCommand::Verify;
    throw InvalidSpecError("unknown command: " + s);
}

inline GevreyType variant_from_string(const std::string& s) {
    if (s == "roumieu") return GevreyType::Roumieu;
    if (s == "beurling") return GevreyType::Beurling;
    if (s == "analytic") return GevreyType::Analytic;
    throw InvalidSpecError("variant must be roumieu, beurling, or analytic");
}

inline AdversarialKind kind_from_string(const std::string& s) {
    if (s == "bounded_re") return AdversarialKind::BoundedRe;
    if (s == "re_to_plus_infinity") return AdversarialKind::ReToPlusInfinity;
    if (s == "re_to_minus_infinity") return AdversarialKind::ReToMinusInfinity;
    throw InvalidSpecError("unknown counterexample kind: " + s);
}

inline void write_side_csv(const JobSpec& job, const GrowthTable& table) {
    if (!job.output_path) return;
    std::ofstream os(*job.output_path, std::ios::binary);
    if (!os) throw Error("cannot open output path: " + *job.output_path);
    table.write_csv(os);
}

}  // namespace detail

inline JobSpec parse_job(const Json& j) {
    if (!j.contains("schema_version"))
        throw InvalidSpecError("job is missing the mandatory schema_version field");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw InvalidSpecError("unsupported schema_version");
    JobSpec job;
    job.command = detail::command_from_string(j.at("command").get<std::string>());
    if (j.contains("truncation")) job.truncation = j.at("truncation").get<std::int64_t>();
    bool needs_spectrum = job.command != JobCommand::Counterexample &&
                          job.command != JobCommand::Verify;
    if (j.contains("spectrum"))
        job.spectrum = spectrum_from_json(j.at("spectrum"));
    else if (needs_spectrum)
        throw InvalidSpecError("job requires a spectrum");
    if (j.contains("beta")) job.beta = j.at("beta").get<double>();
    if (j.contains("variant"))
        job.variant = detail::variant_from_string(j.at("variant").get<std::string>());
    if (j.contains("vector"))
        job.vector = state_vector_from_json(j.at("vector"), job.truncation);
    if (j.contains("t_grid")) job.t_grid = j.at("t_grid").get<std::vector<double>>();
    if (j.contains("s_grid")) job.s_grid = j.at("s_grid").get<std::vector<double>>();
    if (j.contains("n_window")) {
        auto w = j.at("n_window").get<std::vector<std::int64_t>>();
        if (w.size() != 2) throw InvalidSpecError("n_window must be [lo, hi]");
        job.n_window = {w[0], w[1]};
    }
    if (j.contains("kind"))
        job.kind = detail::kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("b_minus")) job.b_minus = j.at("b_minus").get<double>();
    if (j.contains("output_path")) job.output_path = j.at("output_path").get<std::string>();

    switch (job.command) {
        case JobCommand::Classify:
            if (!job.variant) throw InvalidSpecError("classify requires a variant");
            if (*job.variant != GevreyType::Analytic && !job.beta)
                throw InvalidSpecError("classify requires beta for roumieu/beurling");
            break;
        case JobCommand::Simulate:
            if (!job.vector || job.t_grid.empty())
                throw InvalidSpecError("simulate requires a vector and a t_grid");
            break;
        case JobCommand::Estimate:
            if (!job.vector || !job.n_window)
                throw InvalidSpecError("estimate requires a vector and an n_window");
            break;
        case JobCommand::Counterexample:
        case JobCommand::Verify:
            if (!job.kind || !job.beta || !job.variant)
                throw InvalidSpecError("counterexample jobs require kind, beta, and variant");
            break;
        default:
            break;
    }
    return job;
}

inline JobResult run_job(const JobSpec& job) {
    JobResult out;
    Json& r = out.body;
    r["schema_version"] = kSchemaVersion;

    switch (job.command) {
        case JobCommand::Classify: {
            DiagonalOperator a(job.spectrum);
            ClassificationVerdict v;
            if (*job.variant == GevreyType::Analytic)
                v = classify_analytic(a);
            else if (*job.variant == GevreyType::Roumieu)
                v = classify_roumieu(a, *job.beta);
            else
                v = classify_beurling(a, *job.beta);
            r["command"] = "classify";
            r["verdict"] = to_json(v);
            if (v.method == VerdictMethod::Undecided) out.exit_code = 2;
            break;
        }
        case JobCommand::Sector: {
            DiagonalOperator a(job.spectrum);
            r["command"] = "sector";
            auto analytic = classify_analytic(a);
            if (analytic.method == VerdictMethod::Undecided) {
                r["theta"] = nullptr;
                r["hypothesis_holds"] = nullptr;
                out.exit_code = 2;
                break;
            }
            if (!analytic.holds) {
                r["theta"] = nullptr;
                r["hypothesis_holds"] = false;
                break;
            }
            double theta = sector(a);
            r["theta"] = theta;
            r["hypothesis_holds"] = true;
            r["near_zero"] = theta <= 1e-9;
            break;
        }
        case JobCommand::Simulate: {
            DiagonalOperator a(job.spectrum);
            r["command"] = "simulate";
            try {
                auto sol = weak_solution(a, job.vector->with_truncation(job.truncation),
                                         job.t_grid);
                r["admissible"] = true;
                Json rows = Json::array();
                GrowthTable table;
                for (double t : job.t_grid) {
                    StateVector y = sol.evaluate(t);
                    double norm = y.norm_truncated();
                    rows.push_back(Json{{"t", t},
                                        {"norm", number_or_null(norm)},
                                        {"tail_bound", number_or_null(y.tail_bound_l2())}});
                    table.rows.push_back({0, t, norm, y.tail_bound_l2()});
                }
                r["trajectory"] = rows;
                detail::write_side_csv(job, table);
            } catch (const NotAdmissibleError& e) {
                r["admissible"] = false;
                r["reason"] = e.what();
                if (std::string(e.what()).find("undecided") != std::string::npos)
                    out.exit_code = 2;
            }
            break;
        }
        case JobCommand::Estimate: {
            DiagonalOperator a(job.spectrum);
            r["command"] = "estimate";
            try {
                auto sol = weak_solution(a, job.vector->with_truncation(job.truncation));
                r["admissible"] = true;
                std::vector<double> ts =
                    job.t_grid.empty() ? std::vector<double>{1.0} : job.t_grid;
                Json ests = Json::array();
                for (double t : ts) {
                    auto est = sol.estimate_gevrey_order(t, job.n_window->first,
                                                         job.n_window->second);
                    Json e = to_json(est);
                    e["t"] = t;
                    ests.push_back(e);
                }
                r["estimates"] = ests;
            } catch (const NotAdmissibleError& e) {
                r["admissible"] = false;
                r["reason"] = e.what();
                if (std::string(e.what()).find("undecided") != std::string::npos)
                    out.exit_code = 2;
            }
            break;
        }
        case JobCommand::Counterexample: {
            auto c = build_adversarial(*job.kind, *job.beta, *job.variant, job.b_minus);
            r["command"] = "counterexample";
            r["case"] = to_json(c);
            break;
        }
        case JobCommand::Verify: {
            auto c = build_adversarial(*job.kind, *job.beta, *job.variant, job.b_minus);
            r["command"] = "verify";
            r["case"] = to_json(c);
            std::vector<double> ts = job.t_grid.empty() ? std::vector<double>{0.1, 1.0, 10.0}
                                                        : job.t_grid;
            std::vector<double> ss = job.s_grid.empty() ? std::vector<double>{0.1, 1.0, 10.0}
                                                        : job.s_grid;
            r["admissible"] = verify_admissible(c, ts);
            auto rep = verify_failure(c, ss);
            r["fails_roumieu"] = rep.fails_roumieu;
            r["fails_beurling"] = rep.fails_beurling;
            r["trace"] = to_json(rep.partial_sum_trace);
            detail::write_side_csv(job, rep.partial_sum_trace);
            break;
        }
    }
    return out;
}

/// Parse + dispatch with the exit-code mapping. Parse errors report line and
/// column of the offending byte.
inline JobResult run_job_text(const std::string& text) {
    JobResult out;
    Json parsed;
    try {
        parsed = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        out.exit_code = 3;
        std::ostringstream os;
        os << "malformed JSON at line " << line << ", column " << col;
        out.body = Json{{"error", os.str()}};
        return out;
    }
    try {
        return run_job(parse_job(parsed));
    } catch (const ConstraintViolationError& e) {
        out.exit_code = 4;
        out.body = Json{{"error", e.what()}};
    } catch (const InconclusiveDivergenceError& e) {
        out.exit_code = 2;
        out.body = Json{{"error", e.what()}};
    } catch (const Error& e) {
        out.exit_code = 3;
        out.body = Json{{"error", e.what()}};
    } catch (const Json::exception& e) {
        out.exit_code = 3;
        out.body = Json{{"error", e.what()}};
    } catch (const std::exception& e) {
        out.exit_code = 4;
        out.body = Json{{"error", e.what()}};
    }
    return out;
}

}  // namespace gevrey
