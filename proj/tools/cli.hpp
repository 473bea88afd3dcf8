#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochtrend/types.hpp"

namespace stochtrend::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kUnreadable = 2,
    kNonNumeric = 3,
    kTooShort = 4,
    kViolation = 5,
    kNumerical = 6,
};

/// Thrown by the CLI layer; carries the process exit code.
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated with a header row. Throws CliError(kUnreadable).
CsvTable read_csv(const std::string& path);

struct SeriesInput {
    TimeSeries series;
    Vector time;            // 1..n when no time column is given
    std::string value_name;
    std::string time_name;  // empty when absent
};

/// Picks the value column (by name, else the first column that is not the
/// time column). Empty cells are missing. Throws CliError(kNonNumeric).
SeriesInput extract_series(const CsvTable& table, const std::string& column, const std::string& time_column);

/// %.17g, so that values survive a text round trip.
std::string format_double(double v);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace stochtrend::cli
