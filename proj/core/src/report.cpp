#include "seirs/report.hpp"

#include "seirs/format.hpp"

#include <sstream>

namespace seirs {

namespace {

std::string num(double x) { return format_number(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

// Keeps values on one line so the key-value file stays line oriented.
std::string one_line(std::string s)
{
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

KeyValues analysis_key_values(const AnalysisReport& r)
{
    KeyValues kv{
        {"dfe.S", num(r.dfe.S)},
        {"dfe.E", num(r.dfe.E)},
        {"dfe.I", num(r.dfe.I)},
        {"dfe.R", num(r.dfe.R)},
        {"r0_star", num(r.r0_star)},
        {"r0_random", num(r.r0_random)},
        {"espr", num(r.espr)},
        {"inverse_r0_star", num(r.inverse_r0_star)},
        {"h_at_zero", num(r.h_at_zero)},
        {"existence_condition", flag(r.existence_condition)},
        {"v1", num(r.v1)},
        {"regime", to_string(r.regime)},
        {"lambda", r.lambda ? num(*r.lambda) : "none"},
        {"endemic", r.endemic ? "present" : "absent"},
    };
    if (r.endemic) {
        const State& x = r.endemic->state;
        kv.insert(kv.end(), {{"endemic.S", num(x.S)},
                             {"endemic.E", num(x.E)},
                             {"endemic.I", num(x.I)},
                             {"endemic.R", num(x.R)},
                             {"endemic.h_residual", num(r.endemic->h_residual)},
                             {"endemic.iterations", std::to_string(r.endemic->iterations)}});
    }
    kv.emplace_back("permanence", r.permanence ? "present" : "absent");
    if (r.permanence) {
        const PermanenceBounds& b = *r.permanence;
        kv.insert(kv.end(), {{"permanence.v1", num(b.v1)},
                             {"permanence.v2", num(b.v2)},
                             {"permanence.q_bar", num(b.q_bar)},
                             {"permanence.q", num(b.q)},
                             {"permanence.rho", num(b.rho)},
                             {"permanence.s_triangle", num(b.s_triangle)},
                             {"permanence.h", num(b.h)}});
    }
    for (std::size_t i = 0; i < r.notes.size(); ++i) {
        kv.emplace_back("note." + std::to_string(i), one_line(r.notes[i]));
    }
    return kv;
}

std::string analysis_text(const AnalysisReport& r)
{
    std::ostringstream out;
    out << "Threshold analysis\n"
        << "  disease-free equilibrium  S=" << num(r.dfe.S) << " E=" << num(r.dfe.E)
        << " I=" << num(r.dfe.I) << " R=" << num(r.dfe.R) << "\n"
        << "  R0* (fixed delays)        " << num(r.r0_star) << "\n"
        << "  R0 (random delays, prop.) " << num(r.r0_random) << "\n"
        << "  survival probability      " << num(r.espr) << "\n"
        << "  1/R0*                     " << num(r.inverse_r0_star) << "\n"
        << "  H(0)                      " << num(r.h_at_zero) << "\n"
        << "  existence condition       " << (r.existence_condition ? "holds" : "fails") << "\n"
        << "  regime                    " << to_string(r.regime) << "\n";
    if (r.lambda) out << "  extinction rate lambda    " << num(*r.lambda) << "\n";

    out << "\nEndemic equilibrium\n";
    if (r.endemic) {
        const State& x = r.endemic->state;
        out << "  S=" << num(x.S) << " E=" << num(x.E) << " I=" << num(x.I) << " R=" << num(x.R)
            << "\n  H residual " << num(r.endemic->h_residual) << " after "
            << r.endemic->iterations << " iterations\n";
    } else {
        out << "  none\n";
    }

    out << "\nPermanence bounds\n  v1 = " << num(r.v1) << "\n";
    if (r.permanence) {
        const PermanenceBounds& b = *r.permanence;
        out << "  v2 = " << num(b.v2) << "  (q=" << num(b.q) << ", rho=" << num(b.rho)
            << ", h=" << num(b.h) << ", q_bar=" << num(b.q_bar)
            << ", S_tri=" << num(b.s_triangle) << ")\n";
    }
    if (!r.notes.empty()) {
        out << "\nNotes\n";
        for (const auto& n : r.notes) out << "  - " << n << "\n";
    }
    return out.str();
}

KeyValues checks_key_values(const TheoremCheckReport& r)
{
    KeyValues kv;
    for (const auto& e : r.entries) {
        const std::string p = "check." + e.name + ".";
        kv.insert(kv.end(), {{p + "pass", flag(e.pass)},
                             {p + "theorem", one_line(e.theorem)},
                             {p + "target", num(e.target)},
                             {p + "observed", num(e.observed)},
                             {p + "tolerance", num(e.tolerance)},
                             {p + "window_begin", num(e.window.begin)},
                             {p + "window_end", num(e.window.end)},
                             {p + "detail", one_line(e.detail)}});
    }
    kv.emplace_back("checks.all_pass", flag(r.all_pass()));
    return kv;
}

KeyValues axioms_key_values(const AxiomReport& r)
{
    KeyValues kv{{"incidence", r.incidence}};
    for (const auto& a : r.results) {
        kv.emplace_back("axiom." + a.axiom, to_string(a.status));
        kv.emplace_back("axiom." + a.axiom + ".detail", one_line(a.detail));
    }
    kv.emplace_back("derivative_at_zero", num(r.derivative_at_zero));
    kv.emplace_back("all_pass", flag(r.all_pass()));
    return kv;
}

void write_key_values(std::ostream& out, const KeyValues& kv)
{
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj)
{
    out << "t,S,E,I,R,N\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << num(traj.t[k]) << ',' << num(traj.S[k]) << ',' << num(traj.E[k]) << ','
            << num(traj.I[k]) << ',' << num(traj.R[k]) << ',' << num(traj.N[k]) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows)
{
    out << "index,key,value,r0_star,espr,regime,lambda,I_star,error\n";
    for (const auto& row : rows) {
        out << row.index << ',' << csv_cell(key) << ',' << num(row.value) << ',';
        if (row.report) {
            const AnalysisReport& r = *row.report;
            out << num(r.r0_star) << ',' << num(r.espr) << ',' << to_string(r.regime) << ','
                << (r.lambda ? num(*r.lambda) : "") << ','
                << (r.endemic ? num(r.endemic->state.I) : "") << ',';
        } else {
            out << ",,,,,";
        }
        out << csv_cell(row.error) << '\n';
    }
}

} // namespace seirs
