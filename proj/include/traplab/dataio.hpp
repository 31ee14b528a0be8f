#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "traplab/estimate.hpp"
#include "traplab/gof.hpp"

namespace traplab::dataio {

// How the consumption column is denominated. Declared, never inferred.
enum class Unit { per_day, per_year };

// Default absolute poverty lines for the EMC-shaped data (CFA francs):
// 153,530 per capita per year, equivalently 421 per capita per day.
constexpr double kPovertyLinePerDay = 421.0;
constexpr double kPovertyLinePerYear = 153530.0;

inline double default_poverty_line(Unit unit) {
    return unit == Unit::per_day ? kPovertyLinePerDay : kPovertyLinePerYear;
}

// Column-name overrides for the input CSV.
struct SchemaConfig {
    std::string id_col = "household_id";
    std::string consumption_col = "consumption";
    std::string region_col = "region";
    std::string area_col = "area";
    std::string weight_col = "weight";
    Unit unit = Unit::per_day;
};

struct HouseholdRecord {
    std::string household_id;
    double consumption = 0.0;
    std::string region;
    std::string area;
    std::optional<double> weight;
};

struct RejectedRow {
    long line_number = 0;  // 1-based, header is line 1
    std::string reason;
};

struct LoadResult {
    std::vector<HouseholdRecord> records;
    std::vector<RejectedRow> rejects;
};

// Parse the CSV at path. Malformed rows land in rejects, never silently
// dropped; a missing required column is fatal.
LoadResult load_csv(const std::string& path, const SchemaConfig& schema = {});
LoadResult parse_csv(std::istream& in, const SchemaConfig& schema = {});

enum class GroupBy { none, region, area };

// Short-fall sample for one group plus the bookkeeping the tables need.
struct GroupShortfalls {
    estimate::ShortfallSample sample;
    long n_records = 0;  // all records in the group, poor or not
    long n_poor = 0;
    std::vector<double> incomes;  // consumption of every record in the group
    std::vector<double> weights;  // aligned; missing weights become 1
};

// Derive y_i = x* - consumption_i for the poor (consumption < x*), grouped
// by the requested key. Non-poor households are excluded from the sample;
// boundary observations are clipped to x*(1 - 1e-12) and counted.
std::map<std::string, GroupShortfalls> shortfalls(
    const std::vector<HouseholdRecord>& records, double x_star, GroupBy group_by);

// 17-significant-digit formatting used for all numeric text output, so
// goldens are stable across runs.
std::string format_full(double v);

// CSV with one header row; every cell formatted with format_full.
void write_plot_csv(std::ostream& out, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

}  // namespace traplab::dataio

namespace traplab::estimate {
void to_json(nlohmann::json& j, const FitReport& r);
void from_json(const nlohmann::json& j, FitReport& r);
}  // namespace traplab::estimate

namespace traplab::gof {
void to_json(nlohmann::json& j, const GofReport& r);
void from_json(const nlohmann::json& j, GofReport& r);
}  // namespace traplab::gof
