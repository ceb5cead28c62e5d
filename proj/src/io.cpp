#include "aonpg/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace aonpg {

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_runs_csv(BatchResult const& batch, std::ostream& out)
{
    auto const& spec = batch.spec;
    std::string param;
    switch (spec.graph.kind)
    {
        case GraphKind::RandomGeometric:
            param = format_real(spec.graph.radius);
            break;
        case GraphKind::Circulant:
            param = std::to_string(spec.graph.l);
            break;
        case GraphKind::File:
            break;
    }
    out << runs_csv_header << '\n';
    for (auto const& r : batch.runs)
    {
        out << r.run_id << ',' << r.graph_id << ',' << r.seed << ',' << param
            << ',' << r.result.final_beliefs.size() << ','
            << format_real(spec.cfg.alpha.value()) << ','
            << format_real(spec.cfg.payoff_exponent) << ','
            << spec.cfg.max_rounds << ',' << to_string(r.result.converged)
            << ',';
        if (r.result.tau)
            out << *r.result.tau;
        out << ',' << format_real(r.result.final_mean_belief()) << ','
            << format_real(r.metrics.mean_degree) << ','
            << r.metrics.triangle_count << ',' << r.metrics.max_degree << '\n';
    }
}

void write_tail_csv(std::span<SurvivalPoint const> tail, std::ostream& out)
{
    out << tail_csv_header << '\n';
    for (auto const& p : tail)
        out << p.t << ',' << format_real(p.survival) << '\n';
}

void write_ratio_csv(double t, CatastropheRatio const& r,
                     bool with_replacement, std::ostream& out)
{
    out << ratio_csv_header << '\n'
        << format_real(t) << ',' << r.n_pairs << ','
        << (with_replacement ? "R" : "NR") << ',' << format_real(r.p_max)
        << ',' << format_real(r.p_sum) << ',';
    if (r.ratio)
        out << format_real(*r.ratio);
    out << '\n';
}

void write_series_csv(std::span<SeriesPoint const> series, std::ostream& out)
{
    out << series_csv_header << '\n';
    for (auto const& p : series)
        out << p.round << ',' << format_real(p.total_belief) << '\n';
}

namespace {

std::vector<std::string> split_csv(std::string const& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::uint64_t to_u64(std::string const& s, std::size_t line,
                     char const* what)
{
    try
    {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used == s.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
}

double to_real(std::string const& s, std::size_t line, char const* what)
{
    try
    {
        std::size_t used = 0;
        auto v = std::stod(s, &used);
        if (used == s.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
}

}  // namespace

std::vector<RunRow> read_runs_csv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw ParseError(1, "empty runs.csv");
    ++lineno;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != runs_csv_header)
        throw ParseError(lineno, "unexpected runs.csv header");

    std::vector<RunRow> rows;
    while (std::getline(in, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto f = split_csv(line);
        if (f.size() != 14)
            throw ParseError(lineno, "expected 14 fields, got "
                                         + std::to_string(f.size()));
        RunRow row;
        row.run_id = to_u64(f[0], lineno, "run_id");
        row.max_rounds = to_u64(f[7], lineno, "T");
        row.converged = f[8];
        if (row.converged != "contribute" && row.converged != "defect"
            && row.converged != "timeout")
            throw ParseError(lineno, "invalid converged '" + f[8] + "'");
        if (row.converged == "timeout")
        {
            if (!f[9].empty())
                throw ParseError(lineno, "timed-out run carries a tau");
        }
        else
        {
            row.tau = to_u64(f[9], lineno, "tau");
        }
        row.final_mean_belief = to_real(f[10], lineno, "final_mean_belief");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> censored_taus(std::span<RunRow const> rows)
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (auto const& r : rows)
    {
        out.push_back(static_cast<double>(r.tau ? *r.tau : r.max_rounds + 1));
    }
    return out;
}

}  // namespace aonpg
