#pragma once

#include "uhvga/run.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uhvga::cli {

enum ExitCode : int { success = 0, partial_failure = 1, invalid_usage = 2 };

struct RunConfig {
    std::string problem;
    /// 0 selects the problem's default dimension.
    std::size_t n = 0;
    std::size_t p = 9;
    OptimizerKind optimizer = OptimizerKind::adam;
    GradientMode gradients = GradientMode::analytic;
    AdamInput adam_input = AdamInput::normalized;
    std::uint64_t budget = 1000000;
    ObjectivePoint reference{11.0, 11.0};
    Gamma0Policy gamma0;
    std::uint64_t seed = 1;
    std::size_t repetitions = 1;
    std::filesystem::path output_dir;
    std::optional<std::uint64_t> max_iterations;
    bool convergence = true;
    /// Write every iteration instead of the logarithmic subsample.
    bool full_trace = false;
    std::size_t threads = 0;
    std::optional<std::filesystem::path> targets_file;
    std::optional<std::filesystem::path> front_file;

    std::size_t dimension() const;
    /// Throws ConfigError with an actionable message.
    void validate() const;
    /// One `key = value` line per field, for metadata preambles.
    std::vector<std::string> describe() const;
};

struct Statistics {
    double median = 0.0;
    double iqr = 0.0;
    double mean = 0.0;
    /// Sample standard deviation; NaN for fewer than two values.
    double stddev = 0.0;
};

/// Median and IQR use linear interpolation between order statistics
/// (the default of numpy.percentile).
Statistics summarize(std::vector<double> values);

/// Indices of trace rows to write: all of the first 100 iterations, then a
/// row whenever the evaluation count has grown by at least 1 % since the
/// last written row; the final row always.
std::vector<std::size_t> downsample(const std::vector<TraceRow>& rows);

/// Shortest round-trip formatting with 17 significant digits.
std::string format_number(double value);

/// Directory used when --out is not given: $UHVGA_OUTPUT_DIR or ./uhvga-out.
std::filesystem::path default_output_dir();

/// Directory holding targets.tsv and fronts/: $UHVGA_DATA_DIR, else the
/// source or install location compiled in.
std::filesystem::path data_dir();

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uhvga::cli
