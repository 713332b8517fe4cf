#pragma once

#include <string>

#include "json.hpp"
#include "singlap/config.hpp"
#include "singlap/fixedpoint.hpp"

namespace singlap {

using ordered_json = nlohmann::ordered_json;

/// JSON value for a double: finite numbers pass through, nonfinite ones become
/// the strings "inf" / "-inf" / "nan" (plain JSON has no spelling for them).
ordered_json jnum(double v);

/// The constant ledger every report embeds: S1, S2, C1..C5 (the Moser pieces
/// per component), C4 per component, rho and R_inf.
ordered_json constants_ledger(const BoundsReport& b);

ordered_json validation_json(const ValidationReport& vr);

/// `check` subcommand payload: overall admissibility verdict, the named
/// structural checks, and the weight integrability reports.
ordered_json check_report(const RunConfig& rc, const ValidationReport& vr, const HaReport& ha1,
                          const HaReport& ha2);

/// `bounds` subcommand payload: measured weight norms, the L^{p*} case
/// analysis, both Moser ladders, and the ledger.
ordered_json bounds_report(const RunConfig& rc, const BoundsReport& b, const WeightNorms& n1,
                           const WeightNorms& n2);

/// `solve` subcommand payload: stage history, certification block, solution
/// extrema, and the ledger.
ordered_json solve_report(const RunConfig& rc, const ProblemSetup& ctx,
                          const ContinuationResult& res, const TruncatedIneqReport& trunc);

/// Nodal profiles r, u, v and the final-stage barriers, one row per node,
/// full-precision (%.17g) columns.
std::string profiles_csv(const RadialField& u, const RadialField& v, const EnvelopeSet& env);

/// Self-contained line plot of u and v against r (no external assets).
std::string solution_svg(const RadialField& u, const RadialField& v);

/// One aggregate row per sweep value. `rows` are preformatted CSV lines
/// (without newlines); the header names the swept parameter.
std::string sweep_csv(const std::string& param, const std::vector<std::string>& rows);

/// Formats a double as the shortest %.17g representation (deterministic).
std::string fmt_full(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace singlap
