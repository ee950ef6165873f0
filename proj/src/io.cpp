#include "taskmech/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace taskmech {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw CsvError("failed to format a double");
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw CsvError("not a number: '" + s + "'");
    return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

std::string schedule_to_csv(const RewardSchedule& schedule) {
    std::string out = "theta,alpha,beta\n";
    for (int i = 0; i < schedule.grid.size(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        out += format_double(schedule.grid.node(i));
        out += ',';
        out += format_double(schedule.alpha[k]);
        out += ',';
        out += format_double(schedule.beta[k]);
        out += '\n';
    }
    return out;
}

RewardSchedule schedule_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "theta,alpha,beta")
        throw CsvError("schedule csv: expected header 'theta,alpha,beta'");

    std::vector<double> theta, alpha, beta;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            std::ostringstream msg;
            msg << "schedule csv line " << lineno << ": expected 3 fields, got "
                << fields.size();
            throw CsvError(msg.str());
        }
        theta.push_back(parse_double(fields[0]));
        alpha.push_back(parse_double(fields[1]));
        beta.push_back(parse_double(fields[2]));
    }
    if (theta.size() < 3) throw CsvError("schedule csv: fewer than 3 rows");

    const auto n = static_cast<int>(theta.size());
    const double lo = theta.front(), hi = theta.back();
    TypeGrid grid(lo, hi, n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(theta[static_cast<std::size_t>(i)] - grid.node(i)) >
            1e-9 * std::max(1.0, std::abs(hi))) {
            std::ostringstream msg;
            msg << "schedule csv row " << i + 2 << ": theta not on a uniform grid";
            throw CsvError(msg.str());
        }
    }
    return RewardSchedule{std::move(grid), std::move(alpha), std::move(beta)};
}

RewardSchedule read_schedule_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open schedule file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return schedule_from_csv(buf.str());
}

std::string trace_to_csv(const SolveTrace& trace) {
    std::string out = "iter,objective,du_sup\n";
    for (std::size_t i = 0; i < trace.objective.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(trace.objective[i]);
        out += ',';
        out += format_double(trace.du_sup[i]);
        out += '\n';
    }
    return out;
}

std::string snapshots_to_csv(const SolveTrace& trace, const TypeGrid& grid) {
    std::string out = "iter,theta,alpha\n";
    for (const auto& [iter, alpha] : trace.alpha_snapshots) {
        for (int i = 0; i < grid.size(); ++i) {
            out += std::to_string(iter);
            out += ',';
            out += format_double(grid.node(i));
            out += ',';
            out += format_double(alpha[static_cast<std::size_t>(i)]);
            out += '\n';
        }
    }
    return out;
}

std::string utility_matrix_to_csv(const UtilityMatrix& matrix, const TypeGrid& grid) {
    std::string out = "theta,theta_hat,utility\n";
    for (int i = 0; i < matrix.n; ++i) {
        for (int j = 0; j < matrix.n; ++j) {
            out += format_double(grid.node(i));
            out += ',';
            out += format_double(grid.node(j));
            out += ',';
            out += format_double(matrix.at(i, j));
            out += '\n';
        }
    }
    return out;
}

std::string sweep_to_csv(const std::vector<Alpha0Evaluation>& evaluations) {
    std::string out = "alpha0,profit,converged\n";
    for (const auto& e : evaluations) {
        out += format_double(e.alpha0);
        out += ',';
        out += std::isnan(e.profit) ? "nan" : format_double(e.profit);
        out += ',';
        out += e.converged ? '1' : '0';
        out += '\n';
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw CsvError("write failed: " + path.string());
}

}  // namespace taskmech
