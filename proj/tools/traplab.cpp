// traplab: command-line front end for the household-capital trapping toolkit.
// Subcommands: eval, simulate, fit, gof, fgt, plotdata. All randomized
// commands are byte-reproducible for a fixed --seed; numeric text output is
// printed with 17 significant digits.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "traplab/dataio.hpp"
#include "traplab/errors.hpp"
#include "traplab/estimate.hpp"
#include "traplab/gerbershiu.hpp"
#include "traplab/gof.hpp"
#include "traplab/model.hpp"
#include "traplab/poverty.hpp"
#include "traplab/rng.hpp"

using nlohmann::json;
using namespace traplab;
namespace gs = traplab::gerbershiu;

namespace {

struct ModelFlags {
    double r = 1.0;
    double lambda = 1.0;
    double alpha = 1.25;
    double x_star = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--r", r, "capital growth rate above the poverty line")
            ->envname("TRAPLAB_R")
            ->capture_default_str();
        cmd->add_option("--lambda", lambda, "loss event intensity")
            ->envname("TRAPLAB_LAMBDA")
            ->capture_default_str();
        cmd->add_option("--alpha", alpha, "Beta(alpha,1) shape of remaining proportions")
            ->envname("TRAPLAB_ALPHA")
            ->capture_default_str();
        cmd->add_option("--xstar", x_star, "critical capital (poverty line)")
            ->envname("TRAPLAB_XSTAR")
            ->capture_default_str();
    }

    ModelParams params() const {
        const ModelParams p{r, lambda, alpha, x_star};
        p.validate();
        return p;
    }

    json to_json() const {
        return {{"r", r}, {"lambda", lambda}, {"alpha", alpha}, {"x_star", x_star}};
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::domain_error("grid spec must be min:max:steps");
    const double lo = std::stod(spec.substr(0, first));
    const double hi = std::stod(spec.substr(first + 1, second - first - 1));
    const long steps = std::stol(spec.substr(second + 1));
    if (steps < 1 || (steps == 1 && hi != lo) || hi < lo)
        throw std::domain_error("grid spec must satisfy min <= max and steps >= 1");
    std::vector<double> grid(static_cast<size_t>(steps));
    for (long i = 0; i < steps; ++i)
        grid[static_cast<size_t>(i)] =
            steps == 1 ? lo
                       : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return grid;
}

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

dataio::Unit parse_unit(const std::string& unit) {
    if (unit == "daily") return dataio::Unit::per_day;
    if (unit == "annual") return dataio::Unit::per_year;
    throw std::domain_error("--unit must be 'daily' or 'annual'");
}

dataio::GroupBy parse_group_by(const std::string& key) {
    if (key == "none") return dataio::GroupBy::none;
    if (key == "region") return dataio::GroupBy::region;
    if (key == "area") return dataio::GroupBy::area;
    throw std::domain_error("--group-by must be 'none', 'region' or 'area'");
}

// Shared flags for the microdata pipeline (fit / gof / fgt).
struct DataFlags {
    std::string input;
    std::string unit = "daily";
    double x_star = 0.0;  // 0: derive from the unit
    std::string group_by = "none";
    dataio::SchemaConfig schema;

    void attach(CLI::App* cmd, bool input_required = true) {
        auto* opt =
            cmd->add_option("--input", input, "household microdata CSV")->envname("TRAPLAB_INPUT");
        if (input_required) opt->required();
        cmd->add_option("--unit", unit, "consumption unit: daily or annual")
            ->capture_default_str();
        cmd->add_option("--xstar", x_star, "poverty line (default: the unit's EMC value)");
        cmd->add_option("--group-by", group_by, "grouping key: none, region or area")
            ->capture_default_str();
        cmd->add_option("--col-id", schema.id_col, "id column name")->capture_default_str();
        cmd->add_option("--col-consumption", schema.consumption_col, "consumption column name")
            ->capture_default_str();
        cmd->add_option("--col-region", schema.region_col, "region column name")
            ->capture_default_str();
        cmd->add_option("--col-area", schema.area_col, "area column name")->capture_default_str();
        cmd->add_option("--col-weight", schema.weight_col, "weight column name")
            ->capture_default_str();
    }

    double poverty_line() const {
        return x_star > 0.0 ? x_star : dataio::default_poverty_line(parse_unit(unit));
    }
};

json fgt_row(double gamma, const dataio::GroupShortfalls& g, double x_star,
             const std::optional<estimate::FitReport>& fit) {
    json row;
    row["gamma"] = gamma;
    row["direct"] = poverty::fgt_empirical(g.incomes, g.weights, {gamma, x_star});
    row["direct_unweighted"] = poverty::fgt_empirical(g.incomes, {gamma, x_star});
    if (fit) {
        const double head = poverty::headcount(g.incomes, g.weights, x_star);
        row["mle"] = poverty::fgt_from_b1(fit->alpha_mle, head, gamma, x_star);
        row["mme"] = poverty::fgt_from_b1(fit->alpha_mme, head, gamma, x_star);
    }
    return row;
}

int cmd_eval(const ModelFlags& mf, double delta, const std::string& grid_spec,
             const std::string& format, const std::string& output) {
    const ModelParams p = mf.params();
    const ValuationParams v{delta};
    const std::vector<double> xs = parse_grid(grid_spec);
    const bool net = p.net_condition();

    json rows = json::array();
    std::vector<std::vector<double>> csv_rows;
    for (double x : xs) {
        const double psi = gs::trapping_probability(x, p);
        const double m = gs::laplace_trapping_time(x, p, v);
        double exp_tau = std::numeric_limits<double>::quiet_NaN();
        double cond_tau = std::numeric_limits<double>::quiet_NaN();
        if (net) {
            exp_tau = gs::expected_trapping_time(x, p);
            cond_tau = exp_tau / psi;
        }
        rows.push_back({{"x", x},
                        {"psi", psi},
                        {"m_delta", m},
                        {"expected_tau", exp_tau},
                        {"cond_expected_tau", cond_tau}});
        csv_rows.push_back({x, psi, m, exp_tau, cond_tau});
    }

    OutputTarget out(output);
    if (format == "json") {
        json doc;
        doc["params"] = mf.to_json();
        doc["delta"] = delta;
        doc["net_condition"] = net;
        doc["rows"] = rows;
        out.stream() << doc.dump(2) << '\n';
    } else if (format == "csv") {
        dataio::write_plot_csv(out.stream(),
                               {"x", "psi", "m_delta", "expected_tau", "cond_expected_tau"},
                               csv_rows);
    } else {
        throw std::domain_error("--format must be 'csv' or 'json'");
    }
    return 0;
}

int cmd_simulate(const ModelFlags& mf, double x0_opt, double delta, const model::SimConfig& cfg,
                 int threads, const std::string& samples_path, const std::string& output) {
    const ModelParams p = mf.params();
    const double x0 = x0_opt > 0.0 ? x0_opt : p.x_star;
    const auto s = model::monte_carlo(x0, p, cfg, threads);

    json doc;
    doc["params"] = mf.to_json();
    doc["x0"] = x0;
    doc["seed"] = cfg.seed;
    doc["n_paths"] = s.n_paths;
    doc["n_trapped"] = s.n_trapped;
    doc["n_censored"] = s.n_censored;
    doc["upper_barrier_prob"] = cfg.upper_barrier_prob;
    doc["x_high"] = s.x_high;
    doc["psi_hat"] = s.psi_hat;
    doc["se_psi"] = s.se_psi;
    doc["psi_closed_form"] = gs::trapping_probability(x0, p);
    doc["mean_tau_given_trapped"] = s.mean_tau_given_trapped;
    doc["se_tau"] = s.se_tau;
    if (cfg.horizon) doc["horizon"] = *cfg.horizon;
    if (delta > 0.0) {
        // discounted trapping indicator E[e^{-delta tau} 1{trapped}]
        double m1 = 0.0, m2 = 0.0;
        for (double tau : s.tau_samples) {
            const double w = std::exp(-delta * tau);
            m1 += w;
            m2 += w * w;
        }
        const double n = static_cast<double>(s.n_paths);
        const double mean = m1 / n;
        const double var = (m2 - n * mean * mean) / (n - 1.0);
        doc["delta"] = delta;
        doc["discounted_mean"] = mean;
        doc["discounted_se"] = std::sqrt(std::max(0.0, var) / n);
        doc["laplace_closed_form"] = gs::laplace_trapping_time(x0, p, {delta});
    }

    if (!samples_path.empty()) {
        OutputTarget samples(samples_path);
        std::vector<std::vector<double>> rows;
        rows.reserve(s.tau_samples.size());
        for (size_t i = 0; i < s.tau_samples.size(); ++i)
            rows.push_back({s.tau_samples[i], s.surplus_samples[i], s.deficit_samples[i]});
        dataio::write_plot_csv(samples.stream(), {"tau", "surplus_before", "deficit"}, rows);
    }

    OutputTarget out(output);
    out.stream() << doc.dump(2) << '\n';
    return 0;
}

json group_report(const std::string& name, const dataio::GroupShortfalls& g, double x_star,
                  long min_group, long n_boot, std::uint64_t seed, int threads,
                  const std::vector<double>& gammas, bool with_gof) {
    json entry;
    entry["group"] = name;
    entry["n_records"] = g.n_records;
    entry["n_poor"] = g.n_poor;
    entry["n_clipped"] = g.sample.n_clipped;
    json flags = json::array();
    if (g.n_poor == 0)
        flags.push_back("empty_poor");
    else if (g.n_poor < min_group)
        flags.push_back("small_sample");

    std::optional<estimate::FitReport> fit;
    if (g.n_poor > 0) {
        fit = estimate::fit(g.sample);
        if (fit->mle_degenerate) flags.push_back("degenerate_mle");
        entry["fit"] = *fit;
        entry["headcount"] = poverty::headcount(g.incomes, g.weights, x_star);
        entry["headcount_unweighted"] = poverty::headcount(g.incomes, x_star);
        if (with_gof) {
            entry["gof_mle"] =
                gof::evaluate(g.sample, fit->alpha_mle, n_boot, seed, gof::Estimator::mle, threads);
            entry["gof_mme"] =
                gof::evaluate(g.sample, fit->alpha_mme, n_boot, seed, gof::Estimator::mme, threads);
        }
    }
    entry["flags"] = flags;
    if (!gammas.empty()) {
        json fgt = json::array();
        for (double gamma : gammas) fgt.push_back(fgt_row(gamma, g, x_star, fit));
        entry["fgt"] = fgt;
    }
    return entry;
}

int cmd_fit(const DataFlags& df, long n_boot, std::uint64_t seed, int threads, long min_group,
            const std::vector<double>& gammas, bool with_gof, const std::string& output) {
    const double x_star = df.poverty_line();
    const auto loaded = dataio::load_csv(df.input, df.schema);
    const auto groups = dataio::shortfalls(loaded.records, x_star, parse_group_by(df.group_by));

    json doc;
    doc["poverty_line"] = x_star;
    doc["unit"] = df.unit;
    doc["group_by"] = df.group_by;
    doc["n_records"] = loaded.records.size();
    doc["n_rejected"] = loaded.rejects.size();
    json rejects = json::array();
    for (const auto& rej : loaded.rejects)
        rejects.push_back({{"line", rej.line_number}, {"reason", rej.reason}});
    doc["rejects"] = rejects;
    if (with_gof) {
        doc["n_boot"] = n_boot;
        doc["seed"] = seed;
    }

    json group_rows = json::array();
    for (const auto& [name, g] : groups)
        group_rows.push_back(
            group_report(name, g, x_star, min_group, n_boot, seed, threads, gammas, with_gof));
    doc["groups"] = group_rows;

    OutputTarget out(output);
    out.stream() << doc.dump(2) << '\n';
    return 0;
}

int cmd_fgt(const DataFlags& df, const std::vector<double>& gammas, double alpha,
            double headcount, const std::string& output) {
    json doc;
    if (!df.input.empty()) {
        const double x_star = df.poverty_line();
        const auto loaded = dataio::load_csv(df.input, df.schema);
        const auto groups =
            dataio::shortfalls(loaded.records, x_star, parse_group_by(df.group_by));
        doc["poverty_line"] = x_star;
        doc["group_by"] = df.group_by;
        json rows = json::array();
        for (const auto& [name, g] : groups) {
            json entry;
            entry["group"] = name;
            entry["n_records"] = g.n_records;
            entry["headcount"] =
                g.n_records > 0 ? poverty::headcount(g.incomes, g.weights, x_star) : 0.0;
            std::optional<estimate::FitReport> fit;
            if (g.n_poor > 0) fit = estimate::fit(g.sample);
            json fgt = json::array();
            for (double gamma : gammas) fgt.push_back(fgt_row(gamma, g, x_star, fit));
            entry["fgt"] = fgt;
            rows.push_back(entry);
        }
        doc["groups"] = rows;
    } else {
        if (!(alpha > 0.0) || headcount < 0.0)
            throw std::domain_error("fgt: provide --input, or both --alpha and --headcount");
        doc["alpha"] = alpha;
        doc["headcount"] = headcount;
        json fgt = json::array();
        for (double gamma : gammas)
            fgt.push_back(
                {{"gamma", gamma}, {"value", poverty::fgt_from_b1(alpha, headcount, gamma, 1.0)}});
        doc["fgt"] = fgt;
    }
    OutputTarget out(output);
    out.stream() << doc.dump(2) << '\n';
    return 0;
}

int cmd_plotdata(const ModelFlags& mf, const std::string& which, double delta, double x0,
                 const std::string& x_grid, const std::string& y_grid, long paths,
                 std::uint64_t seed, double eps, int threads, const std::string& output) {
    const ModelParams p = mf.params();
    OutputTarget out(output);

    if (which == "deficitcdf") {
        // one simulation at x0; empirical deficit CDF against the conditional law
        model::SimConfig cfg;
        cfg.seed = seed;
        cfg.n_paths = paths;
        cfg.upper_barrier_prob = eps;
        const auto s = model::monte_carlo(x0 > 0.0 ? x0 : 1.25 * p.x_star, p, cfg, threads);
        std::vector<double> deficits(s.deficit_samples);
        std::sort(deficits.begin(), deficits.end());
        const double n = static_cast<double>(deficits.size());
        std::vector<std::vector<double>> rows;
        for (double frac : parse_grid(y_grid)) {
            const double y = frac * p.x_star;
            if (y > p.x_star) continue;
            const double closed = gs::deficit_cdf_conditional(y, p);
            const double empirical =
                n > 0 ? static_cast<double>(std::upper_bound(deficits.begin(), deficits.end(), y) -
                                            deficits.begin()) /
                            n
                      : std::numeric_limits<double>::quiet_NaN();
            const double se = n > 0 ? std::sqrt(closed * (1.0 - closed) / n) : 0.0;
            rows.push_back({y, closed, empirical, se});
        }
        dataio::write_plot_csv(out.stream(), {"y", "cdf_closed", "cdf_mc", "se"}, rows);
        return 0;
    }

    std::vector<std::vector<double>> rows;
    const std::vector<double> xs = parse_grid(x_grid);
    for (size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        model::SimConfig cfg;
        // decorrelate grid points without tying them to the path substreams
        std::uint64_t mix = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
        cfg.seed = rng::splitmix64(mix);
        cfg.n_paths = paths;
        cfg.upper_barrier_prob = eps;
        const auto s = model::monte_carlo(x, p, cfg, threads);
        if (which == "psi") {
            rows.push_back({x, gs::trapping_probability(x, p), s.psi_hat, s.se_psi});
        } else if (which == "laplace") {
            double m1 = 0.0, m2 = 0.0;
            for (double tau : s.tau_samples) {
                const double w = std::exp(-delta * tau);
                m1 += w;
                m2 += w * w;
            }
            const double n = static_cast<double>(s.n_paths);
            const double mean = m1 / n;
            const double var = (m2 - n * mean * mean) / (n - 1.0);
            rows.push_back({x, gs::laplace_trapping_time(x, p, {delta}), mean,
                            std::sqrt(std::max(0.0, var) / n)});
        } else if (which == "exptau") {
            rows.push_back({x, gs::conditional_expected_trapping_time(x, p),
                            s.mean_tau_given_trapped, s.se_tau});
        } else {
            throw std::domain_error("--which must be 'psi', 'laplace', 'exptau' or 'deficitcdf'");
        }
    }
    const std::string value_col =
        which == "psi" ? "psi" : (which == "laplace" ? "m_delta" : "cond_expected_tau");
    dataio::write_plot_csv(out.stream(), {"x", value_col + "_closed", value_col + "_mc", "se"},
                           rows);
    return 0;
}

const char* error_type(const std::exception& e) {
    if (dynamic_cast<const RegimeError*>(&e)) return "regime_error";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
    if (dynamic_cast<const DivergenceError*>(&e)) return "divergence_error";
    if (dynamic_cast<const DegenerateSampleError*>(&e)) return "degenerate_sample_error";
    if (dynamic_cast<const std::domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const std::runtime_error*>(&e)) return "runtime_error";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"household capital trapping toolkit"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "evaluate the closed forms over a capital grid");
    ModelFlags eval_model;
    eval_model.attach(eval);
    double eval_delta = 0.0;
    std::string eval_grid = "1:5:9";
    std::string eval_format = "csv";
    std::string eval_output = "-";
    eval->add_option("--delta", eval_delta, "force of interest")->capture_default_str();
    eval->add_option("--x-grid", eval_grid, "capital grid min:max:steps")->capture_default_str();
    eval->add_option("--format", eval_format, "csv or json")->capture_default_str();
    eval->add_option("--output", eval_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation of the capital process");
    ModelFlags sim_model;
    sim_model.attach(sim);
    double sim_x0 = 0.0;
    double sim_delta = 0.0;
    long sim_paths = 10000;
    std::uint64_t sim_seed = 0;
    double sim_eps = 1e-6;
    double sim_horizon = 0.0;
    int sim_threads = 0;
    std::string sim_samples;
    std::string sim_output = "-";
    sim->add_option("--x0", sim_x0, "initial capital (default: x*)");
    sim->add_option("--delta", sim_delta, "force of interest for the discounted indicator")
        ->capture_default_str();
    sim->add_option("--paths", sim_paths, "number of simulated paths")->capture_default_str();
    sim->add_option("--seed", sim_seed, "master RNG seed")
        ->envname("TRAPLAB_SEED")
        ->capture_default_str();
    sim->add_option("--eps", sim_eps, "upper censoring barrier trapping probability")
        ->capture_default_str();
    sim->add_option("--horizon", sim_horizon, "finite simulation horizon (0: none)");
    sim->add_option("--threads", sim_threads, "worker threads (0: auto)")
        ->envname("TRAPLAB_THREADS")
        ->capture_default_str();
    sim->add_option("--samples", sim_samples, "write per-trapped-path CSV here");
    sim->add_option("--output", sim_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    auto* fit = app.add_subcommand("fit", "fit the B1 short-fall model to microdata");
    DataFlags fit_data;
    fit_data.attach(fit);
    long fit_nboot = 9999;
    std::uint64_t fit_seed = 0;
    int fit_threads = 0;
    long fit_min_group = 30;
    bool fit_no_gof = false;
    std::vector<double> fit_gammas{1.0, 2.0};
    std::string fit_output = "-";
    fit->add_option("--nboot", fit_nboot, "bootstrap replicates for the KS p-value")
        ->envname("TRAPLAB_NBOOT")
        ->capture_default_str();
    fit->add_option("--seed", fit_seed, "bootstrap RNG seed")
        ->envname("TRAPLAB_SEED")
        ->capture_default_str();
    fit->add_option("--threads", fit_threads, "worker threads (0: auto)")
        ->envname("TRAPLAB_THREADS")
        ->capture_default_str();
    fit->add_option("--min-group", fit_min_group, "minimum poor households per group")
        ->capture_default_str();
    fit->add_flag("--no-gof", fit_no_gof, "skip the KS bootstrap and R^2");
    fit->add_option("--gamma", fit_gammas, "FGT exponents")->capture_default_str();
    fit->add_option("--output", fit_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    auto* gof_cmd = app.add_subcommand("gof", "goodness-of-fit for the fitted B1 model");
    DataFlags gof_data;
    gof_data.attach(gof_cmd);
    long gof_nboot = 9999;
    std::uint64_t gof_seed = 0;
    int gof_threads = 0;
    long gof_min_group = 30;
    std::string gof_output = "-";
    gof_cmd->add_option("--nboot", gof_nboot, "bootstrap replicates")
        ->envname("TRAPLAB_NBOOT")
        ->capture_default_str();
    gof_cmd->add_option("--seed", gof_seed, "bootstrap RNG seed")
        ->envname("TRAPLAB_SEED")
        ->capture_default_str();
    gof_cmd->add_option("--threads", gof_threads, "worker threads (0: auto)")
        ->envname("TRAPLAB_THREADS")
        ->capture_default_str();
    gof_cmd->add_option("--min-group", gof_min_group, "minimum poor households per group")
        ->capture_default_str();
    gof_cmd->add_option("--output", gof_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    auto* fgt_cmd = app.add_subcommand("fgt", "FGT poverty indices, empirical or parametric");
    DataFlags fgt_data;
    fgt_data.attach(fgt_cmd, /*input_required=*/false);
    std::vector<double> fgt_gammas{0.0, 1.0, 2.0};
    double fgt_alpha = 0.0;
    double fgt_headcount = -1.0;
    std::string fgt_output = "-";
    fgt_cmd->add_option("--gamma", fgt_gammas, "FGT exponents")->capture_default_str();
    fgt_cmd->add_option("--alpha", fgt_alpha, "fitted B1 alpha (parametric mode)");
    fgt_cmd->add_option("--headcount", fgt_headcount, "head-count index (parametric mode)");
    fgt_cmd->add_option("--output", fgt_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    auto* plot = app.add_subcommand("plotdata", "closed-form vs Monte Carlo curve data");
    ModelFlags plot_model;
    plot_model.attach(plot);
    std::string plot_which = "psi";
    double plot_delta = 0.125;
    double plot_x0 = 0.0;
    std::string plot_xgrid = "1:5:17";
    std::string plot_ygrid = "0:1:21";
    long plot_paths = 10000;
    std::uint64_t plot_seed = 0;
    double plot_eps = 1e-6;
    int plot_threads = 0;
    std::string plot_output = "-";
    plot->add_option("--which", plot_which, "psi, laplace, exptau or deficitcdf")
        ->capture_default_str();
    plot->add_option("--delta", plot_delta, "force of interest (laplace mode)")
        ->capture_default_str();
    plot->add_option("--x0", plot_x0, "initial capital (deficitcdf mode)");
    plot->add_option("--x-grid", plot_xgrid, "capital grid min:max:steps")->capture_default_str();
    plot->add_option("--y-grid", plot_ygrid,
                     "deficit grid as fractions of x*, min:max:steps (deficitcdf mode)")
        ->capture_default_str();
    plot->add_option("--paths", plot_paths, "Monte Carlo paths per point")->capture_default_str();
    plot->add_option("--seed", plot_seed, "master RNG seed")
        ->envname("TRAPLAB_SEED")
        ->capture_default_str();
    plot->add_option("--eps", plot_eps, "upper censoring barrier probability")
        ->capture_default_str();
    plot->add_option("--threads", plot_threads, "worker threads (0: auto)")
        ->envname("TRAPLAB_THREADS")
        ->capture_default_str();
    plot->add_option("--output", plot_output, "output path, '-' for stdout")
        ->envname("TRAPLAB_OUTPUT")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (eval->parsed())
            return cmd_eval(eval_model, eval_delta, eval_grid, eval_format, eval_output);
        if (sim->parsed()) {
            model::SimConfig cfg;
            cfg.seed = sim_seed;
            cfg.n_paths = sim_paths;
            cfg.upper_barrier_prob = sim_eps;
            if (sim_horizon > 0.0) cfg.horizon = sim_horizon;
            return cmd_simulate(sim_model, sim_x0, sim_delta, cfg, sim_threads, sim_samples,
                                sim_output);
        }
        if (fit->parsed())
            return cmd_fit(fit_data, fit_nboot, fit_seed, fit_threads, fit_min_group, fit_gammas,
                           !fit_no_gof, fit_output);
        if (gof_cmd->parsed())
            return cmd_fit(gof_data, gof_nboot, gof_seed, gof_threads, gof_min_group, {},
                           /*with_gof=*/true, gof_output);
        if (fgt_cmd->parsed())
            return cmd_fgt(fgt_data, fgt_gammas, fgt_alpha, fgt_headcount, fgt_output);
        if (plot->parsed())
            return cmd_plotdata(plot_model, plot_which, plot_delta, plot_x0, plot_xgrid,
                                plot_ygrid, plot_paths, plot_seed, plot_eps, plot_threads,
                                plot_output);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        json err;
        err["error"] = {{"type", "usage_error"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return app.exit(e);
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", error_type(e)}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
}
