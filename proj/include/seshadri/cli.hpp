#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seshadri/bounds.hpp"
#include "seshadri/engine.hpp"
#include "seshadri/family.hpp"
#include "seshadri/invariants.hpp"
#include "seshadri/models.hpp"
#include "seshadri/report.hpp"

namespace seshadri::cli {

enum ExitCode : int
{
    Ok = 0,
    InputError = 1,
    Degraded = 2,
};

namespace detail {

inline std::string approx(double v)
{
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    return ss.str();
}

/// Writes to a sibling temporary and renames over the target.
inline void write_atomically(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write \"" + tmp.string() + "\"");
        out << content;
        if (!out.flush())
            throw Error("write to \"" + tmp.string() + "\" failed");
    }
    std::filesystem::rename(tmp, target);
}

inline std::string result_text(const SeshadriResult& r)
{
    std::ostringstream os;
    os << "value " << r.value.text() << " (approx " << approx(r.value.approx()) << ")\n";
    os << "certification " << to_string(r.certification) << "\n";
    if (r.witness)
        os << "witness " << r.witness->label << " (t=" << r.witness->degree_t << ", m=" << r.witness->mult_m
           << ")\n";
    else
        os << "witness none\n";
    if (r.lower_bound)
        os << "lower_bound " << r.lower_bound->text() << "\n";
    if (r.bound_used)
        os << "bound a=" << r.bound_used->a.fraction_str() << " M=" << r.bound_used->M << " B=" << r.bound_used->B
           << "\n";
    for (const auto& w : r.warnings)
        os << "warning: " << w << "\n";
    return os.str();
}

inline bool degraded(const SeshadriResult& r) { return !r.certified(); }

} // namespace detail

/*
 * Entry point behind the `seshadri` executable.  Output goes to `out`
 * (or to --output, written atomically); diagnostics go to `err`.
 */
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified local and global Seshadri constants of polarized surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    std::string format = "json";
    std::string output;
    bool strict = false;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("-o,--output", output, "Write the report to this path");
    };

    std::int64_t d = 0, c = 0, c_prime = 0, ell = 1;
    std::string a_text;
    auto* bound = app.add_subcommand("bound", "Degree bound M, B = Md and multiplicity target for threshold a");
    bound->add_option("--d", d, "Degree L^2")->required();
    bound->add_option("--c", c, "Linear Riemann-Roch coefficient")->required();
    bound->add_option("--c-prime", c_prime, "Constant Riemann-Roch coefficient")->required();
    bound->add_option("--a", a_text, "Threshold p/q with 0 < a < sqrt(d)")->required();
    bound->add_option("--ell", ell, "Vanishing multiplier")->capture_default_str();
    common(bound);

    std::int64_t big_b = 0;
    std::string alpha_text;
    bool permissive = false;
    auto* cands = app.add_subcommand("candidates", "Finite list of possible ratios t/m <= alpha with t <= B");
    cands->add_option("--B", big_b, "Degree bound")->required();
    cands->add_option("--alpha", alpha_text, "Threshold p/q")->required();
    cands->add_flag("--permissive", permissive, "Drop the m <= t restriction (not certified)");
    common(cands);

    std::string model_ref, stratum;
    auto* eps = app.add_subcommand("epsilon", "Local (with --stratum) or global Seshadri constant of a model");
    eps->add_option("model", model_ref, "Model file or builtin:<name>(params)")->required();
    eps->add_option("--stratum", stratum, "Point stratum label");
    eps->add_option("--alpha", alpha_text, "Threshold p/q for the degree bound");
    eps->add_flag("--strict", strict, "Exit 2 when certification is degraded");
    common(eps);

    auto* sub = app.add_subcommand("sublevel", "Strata with epsilon <= a and the closure verdict");
    sub->add_option("model", model_ref, "Model file or builtin:<name>(params)")->required();
    sub->add_option("--a", a_text, "Threshold p/q")->required();
    sub->add_flag("--strict", strict, "Exit 2 when membership is undecided or the set is not closed");
    common(sub);

    std::string family_path, csv_path;
    auto* scn = app.add_subcommand("scan", "Scan a family: Sigma cap, sigma, semicontinuity");
    scn->add_option("family", family_path, "Family document")->required();
    scn->add_option("--alpha", alpha_text, "Threshold p/q")->required();
    scn->add_option("--csv", csv_path, "Also write the epsilon table as CSV");
    scn->add_flag("--strict", strict, "Exit 2 on uncertified values or failed checks");
    common(scn);

    auto* chk = app.add_subcommand("check", "Run the invariant suite over all built-in models");
    chk->add_option("-o,--output", output, "Write the report to this path");

    auto* mdl = app.add_subcommand("model", "Print the canonical document of a built-in model");
    mdl->add_option("ref", model_ref, "builtin name, e.g. quadric(2,2)")->required();
    mdl->add_option("-o,--output", output, "Write the document to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : InputError;
    }

    const bool json = format == "json";
    std::string text;
    int status = Ok;
    try {
        if (*bound) {
            auto a = Rational::parse(a_text);
            auto b = minimal_M(RRData{d, c, c_prime, ell}, a);
            if (json) {
                auto j = report_envelope("bound");
                j["rr"] = ordered_json{{"d", d}, {"c", c}, {"c_prime", c_prime}, {"vanishing_multiplier", ell}};
                j["result"] = to_json(b);
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                os << "M = " << b.M << "\nB = " << b.B << "\nmultiplicity_target = " << b.multiplicity_target
                   << "\nl(M) = " << b.l_at_M.fraction_str() << "\nvanishing_multiplier = "
                   << b.vanishing_multiplier << "\n";
                text = os.str();
            }
        } else if (*cands) {
            auto alpha = Rational::parse(alpha_text);
            auto list = candidate_ratios(big_b, alpha, permissive ? CandidateMode::Permissive : CandidateMode::Certified);
            if (json) {
                auto j = report_envelope("candidates");
                j["B"] = big_b;
                j["alpha"] = alpha.str();
                j["certified"] = !permissive;
                j["ratios"] = to_json(list);
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                for (std::size_t i = 0; i < list.size(); ++i)
                    os << (i ? ", " : "") << list[i].fraction_str();
                os << "\n";
                if (permissive)
                    os << "note: permissive mode, not certified\n";
                text = os.str();
            }
        } else if (*eps) {
            std::optional<Rational> alpha;
            if (!alpha_text.empty())
                alpha = Rational::parse(alpha_text);
            auto model = resolve_model_ref(model_ref);
            SeshadriResult r;
            std::string where;
            if (!stratum.empty()) {
                r = epsilon(model, model.stratum(stratum), alpha);
                where = stratum;
            } else {
                auto g = global_epsilon(model, alpha);
                r = std::move(g.result);
                where = g.stratum;
            }
            if (json) {
                auto j = report_envelope("epsilon");
                j["model"] = model.name;
                j["scope"] = stratum.empty() ? "global" : "local";
                j["stratum"] = where;
                j["result"] = to_json(r);
                text = j.dump(2) + "\n";
            } else {
                text = "model " + model.name + "\n" + (stratum.empty() ? "global, attained at " : "stratum ") +
                       where + "\n" + detail::result_text(r);
            }
            if (strict && detail::degraded(r))
                status = Degraded;
        } else if (*sub) {
            auto a = Rational::parse(a_text);
            auto model = resolve_model_ref(model_ref);
            auto rep = sublevel_set(model, a);
            if (json) {
                auto j = report_envelope("sublevel");
                j["model"] = model.name;
                j["result"] = to_json(rep);
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                os << "a = " << a.fraction_str() << "\nstrata:";
                for (const auto& s : rep.members)
                    os << " " << s;
                os << "\nclosed " << (rep.closed ? "yes" : "no") << "\n";
                for (const auto& s : rep.uncertain)
                    os << "uncertain " << s << "\n";
                for (const auto& v : rep.closure_violations)
                    os << "violation: " << v << "\n";
                text = os.str();
            }
            if (strict && (!rep.closed || !rep.uncertain.empty()))
                status = Degraded;
        } else if (*scn) {
            auto alpha = Rational::parse(alpha_text);
            const std::filesystem::path fp(family_path);
            auto family = load_family(read_file(fp), fp.parent_path());
            auto rep = scan(family, alpha);
            if (json) {
                auto j = report_envelope("scan");
                j["result"] = to_json(rep);
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                os << "degree " << rep.degree << "\nalpha " << rep.alpha.fraction_str() << "\n";
                os << "param_label\tstratum\tepsilon\tepsilon_approx\tcertification\twitness\n";
                for (const auto& row : rep.epsilon_table)
                    os << row.param_label << '\t' << row.stratum << '\t' << row.result.value.text() << '\t'
                       << detail::approx(row.result.value.approx()) << '\t' << to_string(row.result.certification)
                       << '\t' << (row.result.witness ? row.result.witness->label : "-") << '\n';
                os << "Sigma cap:";
                for (const auto& q : rep.sigma_cap)
                    os << ' ' << q.fraction_str();
                os << " (" << rep.sigma_cap.size() << " values, contained in candidate superset: "
                   << (rep.contained ? "yes" : "no") << ")\n";
                os << "sigma " << rep.sigma_family.text() << " attained at (" << rep.sigma_attained_at.first << ", "
                   << rep.sigma_attained_at.second << ")\n";
                for (const auto& v : rep.semicontinuity)
                    os << (v.pass ? "PASS" : "FAIL") << " semicontinuity [" << v.context << "] " << v.general
                       << " -> " << v.special << (v.pass ? "" : ": " + v.detail) << '\n';
                for (const auto& w : rep.warnings)
                    os << "warning: " << w << '\n';
                text = os.str();
            }
            if (!csv_path.empty()) {
                std::ostringstream csv;
                write_csv(csv, rep);
                detail::write_atomically(csv_path, csv.str());
            }
            bool all_pass = std::all_of(rep.semicontinuity.begin(), rep.semicontinuity.end(),
                                        [](const auto& v) { return v.pass; });
            if (strict && (!rep.uncertified.empty() || !all_pass || !rep.contained))
                status = Degraded;
        } else if (*chk) {
            std::ostringstream os;
            int failed = 0;
            for (const auto& line : run_invariant_suite()) {
                os << (line.pass ? "PASS " : "FAIL ") << line.name;
                if (!line.pass) {
                    os << ": " << line.detail;
                    ++failed;
                }
                os << '\n';
            }
            os << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << '\n';
            text = os.str();
            if (failed)
                status = InputError;
        } else if (*mdl) {
            text = dump_model(builtin_from_ref(model_ref));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    }

    try {
        if (output.empty())
            out << text;
        else
            detail::write_atomically(output, text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    }
    return status;
}

} // namespace seshadri::cli
