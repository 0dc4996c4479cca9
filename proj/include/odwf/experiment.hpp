#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "odwf/config.hpp"

namespace odwf::experiment {

enum class Mode { Simulate, Predict, Both };
enum class Format { Csv, JsonLines };

inline constexpr int kSchemaVersion = 1;

/// Parse or validation failure in an experiment spec. `line()` is 0 when the
/// problem is not tied to a line (e.g. a command-line override).
class SpecError : public std::runtime_error {
  public:
    SpecError(int line, std::string key, const std::string& message);
    int line() const { return line_; }
    const std::string& key() const { return key_; }
    const std::string& detail() const { return detail_; }

  private:
    int line_;
    std::string key_;
    std::string detail_;
};

struct SweepAxis {
    std::string key;
    std::vector<double> values;
    int line = 0;
};

struct ExperimentSpec {
    int schema_version = kSchemaVersion;
    SystemConfig base;
    /// Cross product, first axis outermost.
    std::vector<SweepAxis> axes;
    Mode mode = Mode::Both;
    /// "-" writes to standard output.
    std::string output_path = "-";
    Format format = Format::Csv;
    std::size_t max_points = 10000;
    bool record_wall_time = false;
    unsigned threads = 1;
    /// Command-line overrides in the order applied, echoed into every row.
    std::vector<std::pair<std::string, std::string>> overrides;
    /// Line on which each [system] key was set, for error messages.
    std::vector<std::pair<std::string, int>> key_lines;

    std::size_t point_count() const;
    /// One validated config per sweep point, in sweep order.
    std::vector<SystemConfig> plan() const;
};

/// Parses the sectioned key = value format ([system], [sweep], [output]).
ExperimentSpec parse_spec(std::string_view text);

ExperimentSpec load_spec(const std::string& path);

/// Assigns a [system] or [output] key from text, as the parser does.
void set_key(ExperimentSpec& spec, std::string_view section, std::string_view key,
             std::string_view value, int line);

/// Applies a command-line override and records it for provenance.
void apply_override(ExperimentSpec& spec, const std::string& key, const std::string& value);

const char* to_string(Mode m);
const char* to_string(Format f);

using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct ResultTable {
    std::vector<std::vector<Cell>> rows;
};

/// Output columns in emission order.
const std::vector<std::string>& columns();

ResultTable run_experiment(const ExperimentSpec& spec);

/// Full document text (CSV with header, or one JSON object per line).
std::string render(const ResultTable& table, Format format);

void emit(const ResultTable& table, Format format, std::ostream& out);

/// Writes to `path`, or to standard output for "-". Throws
/// std::runtime_error if the file cannot be written.
void emit(const ResultTable& table, Format format, const std::string& path);

/// Shortest text that round-trips to the same double, '.' decimal point.
std::string format_number(double value);

}  // namespace odwf::experiment
