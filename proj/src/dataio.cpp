#include "traplab/dataio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace traplab::dataio {

namespace {

// Minimal RFC-4180 field splitter: quoted fields, doubled quotes, embedded
// commas. Embedded newlines are not supported (one record per line).
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace

LoadResult parse_csv(std::istream& in, const SchemaConfig& schema) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file (no header)");
    const std::vector<std::string> header = split_csv_line(strip_cr(line));

    auto column = [&](const std::string& name) -> std::optional<size_t> {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    };
    const auto id_idx = column(schema.id_col);
    const auto cons_idx = column(schema.consumption_col);
    if (!id_idx) throw std::runtime_error("load_csv: missing required column '" + schema.id_col + "'");
    if (!cons_idx)
        throw std::runtime_error("load_csv: missing required column '" + schema.consumption_col + "'");
    const auto region_idx = column(schema.region_col);
    const auto area_idx = column(schema.area_col);
    const auto weight_idx = column(schema.weight_col);

    LoadResult result;
    long line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            result.rejects.push_back({line_number, "field count mismatch"});
            continue;
        }
        const std::optional<double> consumption = parse_number(fields[*cons_idx]);
        if (!consumption) {
            result.rejects.push_back({line_number, "missing or unparseable consumption"});
            continue;
        }
        if (*consumption < 0.0) {
            result.rejects.push_back({line_number, "negative consumption"});
            continue;
        }
        HouseholdRecord rec;
        rec.household_id = fields[*id_idx];
        rec.consumption = *consumption;
        if (region_idx) rec.region = fields[*region_idx];
        if (area_idx) rec.area = fields[*area_idx];
        if (weight_idx && !fields[*weight_idx].empty()) {
            const std::optional<double> w = parse_number(fields[*weight_idx]);
            if (!w || !(*w > 0.0)) {
                result.rejects.push_back({line_number, "nonpositive or unparseable weight"});
                continue;
            }
            rec.weight = *w;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

LoadResult load_csv(const std::string& path, const SchemaConfig& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");
    return parse_csv(in, schema);
}

std::map<std::string, GroupShortfalls> shortfalls(
    const std::vector<HouseholdRecord>& records, double x_star, GroupBy group_by) {
    if (!(x_star > 0.0)) throw std::domain_error("shortfalls: x_star must be > 0");
    const double y_max = x_star * (1.0 - 1e-12);

    std::map<std::string, GroupShortfalls> groups;
    for (const auto& rec : records) {
        std::string key;
        switch (group_by) {
            case GroupBy::none: key = "all"; break;
            case GroupBy::region: key = rec.region; break;
            case GroupBy::area: key = rec.area; break;
        }
        GroupShortfalls& g = groups[key];
        g.sample.x_star = x_star;
        g.sample.group = key;
        ++g.n_records;
        g.incomes.push_back(rec.consumption);
        g.weights.push_back(rec.weight.value_or(1.0));
        if (rec.consumption < x_star) {
            ++g.n_poor;
            double y = x_star - rec.consumption;
            if (y > y_max) {
                y = y_max;
                ++g.sample.n_clipped;
            }
            g.sample.y.push_back(y);
        }
    }
    return groups;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_plot_csv(std::ostream& out, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ',';
        out << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("write_plot_csv: row width mismatch");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_full(row[i]);
        }
        out << '\n';
    }
}

}  // namespace traplab::dataio

namespace traplab::estimate {

void to_json(nlohmann::json& j, const FitReport& r) {
    j = nlohmann::json{{"alpha_mle", r.alpha_mle},
                       {"alpha_mme", r.alpha_mme},
                       {"n", r.n},
                       {"loglik_at_mle", r.loglik_at_mle},
                       {"mle_degenerate", r.mle_degenerate}};
}

void from_json(const nlohmann::json& j, FitReport& r) {
    j.at("alpha_mle").get_to(r.alpha_mle);
    j.at("alpha_mme").get_to(r.alpha_mme);
    j.at("n").get_to(r.n);
    j.at("loglik_at_mle").get_to(r.loglik_at_mle);
    j.at("mle_degenerate").get_to(r.mle_degenerate);
}

}  // namespace traplab::estimate

namespace traplab::gof {

void to_json(nlohmann::json& j, const GofReport& r) {
    j = nlohmann::json{{"d_stat", r.d_stat},
                       {"p_value", r.p_value},
                       {"r_squared", r.r_squared},
                       {"n_boot", r.n_boot}};
}

void from_json(const nlohmann::json& j, GofReport& r) {
    j.at("d_stat").get_to(r.d_stat);
    j.at("p_value").get_to(r.p_value);
    j.at("r_squared").get_to(r.r_squared);
    j.at("n_boot").get_to(r.n_boot);
}

}  // namespace traplab::gof
