#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stochtrend/asymptotics.hpp"
#include "stochtrend/estimators.hpp"
#include "stochtrend/selection.hpp"
#include "stochtrend/simulation.hpp"
#include "stochtrend/stats.hpp"
#include "stochtrend/structured.hpp"

namespace stochtrend::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_number(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class OutDir {
public:
    explicit OutDir(const std::string& path) : dir_(path.empty() ? "." : path) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw CliError(kUnreadable, "cannot create output directory " + dir_.string());
    }
    std::ofstream open(const std::string& name) const {
        std::ofstream f(dir_ / name);
        if (!f) throw CliError(kUnreadable, "cannot write " + (dir_ / name).string());
        return f;
    }
    void write_json(const std::string& name, const json& j) const {
        auto f = open(name);
        f << j.dump(2) << '\n';
    }

private:
    fs::path dir_;
};

std::string csv_cell(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

// ---- fit and select ---------------------------------------------------------

struct SeriesFlags {
    std::string input;
    std::string column;
    std::string time_column;
    std::string out_dir = ".";
    std::string criterion = "bic";
    std::size_t p_max = 10;
    int d_max = 2;
    bool asymptotic = false;
};

void add_series_flags(CLI::App* sub, SeriesFlags& f) {
    sub->add_option("--input", f.input, "CSV file with a header row")->required();
    sub->add_option("--column", f.column, "value column (default: first non-time column)");
    sub->add_option("--time-column", f.time_column, "time column (default: 1..n)");
    sub->add_option("--out-dir", f.out_dir, "output directory");
    sub->add_option("--criterion", f.criterion, "AR order criterion")->check(CLI::IsMember({"aic", "bic"}));
    sub->add_option("--pmax", f.p_max, "largest AR order tried");
    sub->add_option("--dmax", f.d_max, "largest difference order searched")->check(CLI::Range(1, 6));
    sub->add_flag("--asymptotic", f.asymptotic, "use the closed-form penalty instead of the spectral sum");
}

SelectOptions select_options(const SeriesFlags& f, std::optional<int> d, std::optional<double> nu) {
    SelectOptions o;
    o.d_set.clear();
    if (d) {
        o.d_set.push_back(*d);
    } else {
        for (int k = 1; k <= f.d_max; ++k) o.d_set.push_back(k);
    }
    if (nu) o.nu_grid = {*nu};
    o.p_max = f.p_max;
    o.order_criterion = f.criterion == "aic" ? OrderCriterion::aic : OrderCriterion::bic;
    o.asymptotic_criterion = f.asymptotic;
    return o;
}

SeriesInput load_series(const SeriesFlags& f) {
    return extract_series(read_csv(f.input), f.column, f.time_column);
}

json ar_json(const ARModel& m) {
    json phi = json::array();
    for (double v : m.phi()) phi.push_back(v);
    return phi;
}

struct FitFlags {
    SeriesFlags s;
    std::optional<int> d;
    std::optional<double> nu;
    double alpha = 0.05;
    bool wls = false;
    bool plot_data = false;
};

int cmd_fit(const FitFlags& f) {
    const SeriesInput in = load_series(f.s);
    const TimeSeries& y = in.series;
    const std::size_t n = y.size();
    const bool complete = y.fully_observed();
    const bool selecting = !(f.d && f.nu);
    if (f.nu && *f.nu < 0.0) throw CliError(kUsage, "--nu must be >= 0");

    std::optional<SelectionResult> sel;
    if (complete && (selecting || n >= 20)) {
        sel = select(y, select_options(f.s, f.d, f.nu));
    } else if (selecting) {
        throw CliError(kUsage, "selection needs a fully observed series of length >= 20; pass --d and --nu");
    }

    const int d = sel ? sel->d_hat : *f.d;
    const double nu = sel ? sel->nu_hat : *f.nu;
    const PenaltySpec spec(DiffOrder(d), nu);

    TrendFit fit(spec);
    if (!complete) {
        fit = fit_missing(y, spec);
    } else if (f.wls) {
        if (!sel || sel->ar.innovation_variance() <= 0.0)
            throw CliError(kNumerical, "weighted fit needs a residual AR model with positive variance");
        fit = fit_wls(y, spec, sel->ar);
    } else {
        fit = fit_ols(y, spec);
    }

    const std::size_t n_obs = y.observed_count();
    double sigma_eps2 = 0.0;
    if (sel) {
        sigma_eps2 = sel->ar.autocovariances(0)[0];
    } else {
        sigma_eps2 = fit.sse / std::max(1.0, static_cast<double>(n_obs) - fit.dof);
    }
    if (nu > 0.0) {
        fit = prediction_band(std::move(fit), sigma_eps2, nu, f.alpha);
    } else {
        const double h = normal_quantile(1.0 - f.alpha / 2.0) * std::sqrt(sigma_eps2);
        fit.lower = fit.upper = fit.mu_hat;
        for (std::size_t t = 0; t < n; ++t) {
            (*fit.lower)[t] -= h;
            (*fit.upper)[t] += h;
        }
    }

    const OutDir out(f.s.out_dir);
    {
        auto csv = out.open("trend.csv");
        csv << "t,y,mu_hat,lower,upper\n";
        for (std::size_t t = 0; t < n; ++t) {
            csv << format_double(in.time[t]) << ',' << (y.observed[t] ? format_double(y.values[t]) : "") << ','
                << format_double(fit.mu_hat[t]) << ',' << format_double((*fit.lower)[t]) << ','
                << format_double((*fit.upper)[t]) << '\n';
        }
    }
    if (f.plot_data) {
        auto csv = out.open("plot_data.csv");
        csv << "t,series,value\n";
        const std::pair<const char*, const Vector*> series[] = {
            {"mu_hat", &fit.mu_hat}, {"lower", &*fit.lower}, {"upper", &*fit.upper}};
        for (std::size_t t = 0; t < n; ++t)
            if (y.observed[t]) csv << format_double(in.time[t]) << ",y," << format_double(y.values[t]) << '\n';
        for (const auto& [name, v] : series)
            for (std::size_t t = 0; t < n; ++t)
                csv << format_double(in.time[t]) << ',' << name << ',' << format_double((*v)[t]) << '\n';
    }

    json s;
    s["d"] = d;
    s["nu"] = nu;
    s["g0"] = sel ? json(sel->g0) : json(nullptr);
    s["phi"] = sel ? num_or_null(sel->phi_min) : json(nullptr);
    s["sigma_delta2"] = sel ? json(sel->ar.innovation_variance()) : json(nullptr);
    s["sse"] = fit.sse;
    s["dof"] = fit.dof;
    s["ar_phi"] = sel ? ar_json(sel->ar) : json(nullptr);
    s["sigma_eps2"] = sigma_eps2;
    s["n"] = n;
    s["n_observed"] = n_obs;
    s["alpha"] = f.alpha;
    s["selected"] = selecting;
    s["wls"] = f.wls;
    s["degenerate_residuals"] = sel ? sel->degenerate_residuals : false;
    s["value_column"] = in.value_name;
    out.write_json("summary.json", s);

    std::cout << "d=" << d << " nu=" << format_double(nu) << " sse=" << format_double(fit.sse)
              << " dof=" << format_double(fit.dof) << '\n';
    return kOk;
}

int cmd_select(const SeriesFlags& f) {
    const SeriesInput in = load_series(f);
    if (!in.series.fully_observed()) throw CliError(kUsage, "selection needs a fully observed series");
    const SelectionResult r = select(in.series, select_options(f, std::nullopt, std::nullopt));
    const OutDir out(f.out_dir);
    std::size_t arg_row = 0, row = 0;
    {
        auto csv = out.open("surface.csv");
        csv << "d,nu,phi\n";
        for (std::size_t a = 0; a < r.d_set.size(); ++a)
            for (std::size_t b = 0; b < r.nu_grid.size(); ++b, ++row) {
                csv << r.d_set[a] << ',' << format_double(r.nu_grid[b]) << ',' << csv_cell(r.surface[a][b]) << '\n';
                if (r.d_set[a] == r.d_hat && r.nu_grid[b] == r.nu_hat) arg_row = row;
            }
    }
    json s;
    s["d"] = r.d_hat;
    s["nu"] = r.nu_hat;
    s["phi"] = r.phi_min;
    s["g0"] = r.g0;
    s["sigma_delta2"] = r.ar.innovation_variance();
    s["ar_phi"] = ar_json(r.ar);
    s["sigma2_first_diff"] = r.sigma2_first_diff;
    s["excluded_points"] = r.excluded_points;
    s["degenerate_residuals"] = r.degenerate_residuals;
    s["argmin_row"] = arg_row;
    out.write_json("selection.json", s);
    std::cout << "d=" << r.d_hat << " nu=" << format_double(r.nu_hat) << " phi=" << format_double(r.phi_min) << '\n';
    return kOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimFlags {
    std::string config;
    std::string out_dir = ".";
    std::string experiment = "table1";
    std::optional<std::size_t> repeats;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

template <typename T>
void read_key(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

int cmd_simulate(const SimFlags& f) {
    json cfg = json::object();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw CliError(kUnreadable, "cannot read config " + f.config);
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw CliError(kUnreadable, std::string("malformed config: ") + e.what());
        }
    }
    std::string experiment = f.experiment;
    read_key(cfg, "experiment", experiment);
    const OutDir out(f.out_dir);

    try {
        if (experiment == "table1") {
            Table1Config c;
            read_key(cfg, "n", c.n);
            read_key(cfg, "d_true", c.d_true);
            read_key(cfg, "snr", c.snr);
            read_key(cfg, "repeats", c.repeats);
            read_key(cfg, "base_seed", c.base_seed);
            read_key(cfg, "d_set", c.d_set);
            read_key(cfg, "nu_grid", c.nu_grid);
            read_key(cfg, "threads", c.threads);
            if (f.repeats) c.repeats = *f.repeats;
            if (f.seed) c.base_seed = *f.seed;
            if (f.threads) c.threads = f.threads;
            const auto cells = run_table1(c);
            auto sum = out.open("table1_summary.csv");
            sum << "n,d_true,snr,mean,sd,median,published_mean,published_sd,published_median\n";
            auto reps = out.open("table1_repeats.csv");
            reps << "cell,n,d_true,snr,repeat,seed,ratio,d_hat,nu_hat\n";
            for (const auto& cell : cells) {
                const PublishedCell p = published_table1(cell.n, cell.d_true, cell.snr);
                sum << cell.n << ',' << cell.d_true << ',' << format_double(cell.snr) << ','
                    << format_double(cell.mean) << ',' << format_double(cell.sd) << ','
                    << format_double(cell.median) << ',' << csv_cell(p.mean) << ',' << csv_cell(p.sd) << ','
                    << csv_cell(p.median) << '\n';
                for (std::size_t r = 0; r < cell.ratios.size(); ++r)
                    reps << cell.cell_id << ',' << cell.n << ',' << cell.d_true << ',' << format_double(cell.snr)
                         << ',' << r << ',' << cell.seeds[r] << ',' << format_double(cell.ratios[r]) << ','
                         << cell.d_hat[r] << ',' << format_double(cell.nu_hat[r]) << '\n';
                std::cout << "n=" << cell.n << " d=" << cell.d_true << " snr=" << cell.snr
                          << " mean=" << cell.mean << " sd=" << cell.sd << " median=" << cell.median << '\n';
            }
        } else if (experiment == "rate") {
            RateExperimentConfig c;
            int d = 1, d_true = 1;
            Vector phi;
            double sigma2 = 1.0;
            read_key(cfg, "d", d);
            d_true = d;
            read_key(cfg, "d_true", d_true);
            read_key(cfg, "n_list", c.n_list);
            read_key(cfg, "phi", phi);
            read_key(cfg, "sigma2", sigma2);
            read_key(cfg, "tau2", c.tau2);
            read_key(cfg, "repeats", c.repeats);
            read_key(cfg, "seed", c.seed);
            read_key(cfg, "grid_points", c.grid_points);
            read_key(cfg, "threads", c.threads);
            c.d = DiffOrder(d);
            c.d_true = DiffOrder(d_true);
            c.err = ARModel(phi, sigma2);
            if (f.repeats) c.repeats = *f.repeats;
            if (f.seed) c.seed = *f.seed;
            if (f.threads) c.threads = f.threads;
            const RateReport r = run_rate_experiment(c);
            auto csv = out.open("rate.csv");
            csv << "n,min_mse,best_nu\n";
            for (std::size_t i = 0; i < r.n.size(); ++i)
                csv << r.n[i] << ',' << format_double(r.min_mse[i]) << ',' << format_double(r.best_nu[i]) << '\n';
            json s;
            s["d"] = d;
            s["d_true"] = d_true;
            s["slope"] = r.fit.defined ? json(r.fit.slope) : json(nullptr);
            s["intercept"] = r.fit.defined ? json(r.fit.intercept) : json(nullptr);
            s["defined"] = r.fit.defined;
            s["expected_slope"] = -(2.0 * std::min(d, d_true) - 1.0) / (2.0 * std::min(d, d_true));
            out.write_json("rate_summary.json", s);
            std::cout << "slope=" << (r.fit.defined ? format_double(r.fit.slope) : "undefined") << '\n';
        } else {
            throw CliError(kUsage, "unknown experiment '" + experiment + "' (table1 or rate)");
        }
    } catch (const json::exception& e) {
        throw CliError(kUsage, std::string("bad config value: ") + e.what());
    }
    return kOk;
}

// ---- theory and lemmas ------------------------------------------------------

struct TheoryFlags {
    int d = 1;
    std::vector<std::size_t> n{256, 1024, 4096};
    Vector phi;
    double sigma2 = 1.0;
    double tau2 = 1.0;
    std::optional<double> tolerance;
    std::string out_dir = ".";
};

int cmd_theory(const TheoryFlags& f) {
    const DiffOrder d(f.d);
    const ARModel err(f.phi, f.sigma2);
    const AsymptoticConstants k = constants(d, err.spectral_density_at_zero(), f.tau2);
    const OutDir out(f.out_dir);
    auto csv = out.open("theory.csv");
    csv << "d,n,nu,nu_over_nu_star,bandwidth,exact_variance,predicted_variance,rel_err_variance,"
           "exact_bias,predicted_bias,rel_err_bias,pre_asymptotic\n";
    std::size_t violations = 0;
    for (std::size_t n : f.n) {
        if (n < 2 * d.size() + 1) throw DimensionError("n = " + std::to_string(n) + " is too short for d");
        const double star = optimal_nu(n, k);
        const double sg2 = f.tau2 / std::pow(static_cast<double>(n), 2.0 * f.d - 1.0);
        for (double m : {0.25, 1.0, 4.0}) {
            const double nu = m * star;
            const double b = effective_bandwidth(nu, n, d);
            const double ev = exact_variance(nu, d, n, err), pv = predicted_variance(nu, k);
            const double eb = exact_bias(nu, d, n, sg2), pb = predicted_bias(nu, n, k);
            const double rv = std::abs(ev - pv) / pv, rb = std::abs(eb - pb) / pb;
            // Too few effective points in the window, or a window wider than the series.
            const bool pre = n < 128 || std::pow(nu, 1.0 / (2.0 * f.d)) < 4.0 || b > 0.25;
            if (f.tolerance && !pre && (rv > *f.tolerance || rb > *f.tolerance)) ++violations;
            csv << f.d << ',' << n << ',' << format_double(nu) << ',' << format_double(m) << ','
                << format_double(b) << ',' << format_double(ev) << ',' << format_double(pv) << ','
                << format_double(rv) << ',' << format_double(eb) << ',' << format_double(pb) << ','
                << format_double(rb) << ',' << (pre ? "pre-asymptotic" : "") << '\n';
            std::cout << "n=" << n << " nu/nu*=" << m << " variance rel err=" << rv << " bias rel err=" << rb
                      << (pre ? " (pre-asymptotic)" : "") << '\n';
        }
    }
    if (violations) {
        std::cerr << violations << " rows exceed the tolerance\n";
        return kViolation;
    }
    return kOk;
}

int cmd_lemmas(std::uint64_t seed, const std::string& out_dir) {
    const auto reports = run_lemma_suites(seed);
    const OutDir out(out_dir);
    auto csv = out.open("lemmas.csv");
    csv << "suite,label,lhs,rhs,margin,holds\n";
    std::size_t violations = 0;
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.lhs.size(); ++i) {
            const double margin = r.rhs[i] + r.tolerance - r.lhs[i];
            csv << r.name << ',' << r.labels[i] << ',' << format_double(r.lhs[i]) << ','
                << format_double(r.rhs[i]) << ',' << format_double(margin) << ',' << (margin >= 0.0 ? 1 : 0)
                << '\n';
        }
        violations += r.violations();
        std::cout << r.name << ": " << r.lhs.size() << " bounds, worst margin " << r.worst_margin()
                  << (r.holds() ? "" : "  VIOLATED") << '\n';
    }
    std::cout << reports.size() << " suites, " << violations << " violations\n";
    return violations ? kViolation : kOk;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kUnreadable, "cannot read " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            t.header = split_line(line);
            first = false;
            continue;
        }
        // with a single column a blank line is a missing value, not a separator
        if (trim(line).empty() && t.header.size() != 1) continue;
        t.rows.push_back(split_line(line));
    }
    if (first) throw CliError(kUnreadable, path + " is empty (a header row is required)");
    while (!t.rows.empty() && t.rows.back().size() == 1 && t.rows.back()[0].empty()) t.rows.pop_back();
    return t;
}

SeriesInput extract_series(const CsvTable& table, const std::string& column, const std::string& time_column) {
    auto find = [&](const std::string& name) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) throw CliError(kUsage, "no column named '" + name + "'");
        return static_cast<std::size_t>(it - table.header.begin());
    };
    std::optional<std::size_t> tcol;
    if (!time_column.empty()) tcol = find(time_column);
    std::size_t vcol = 0;
    if (!column.empty()) {
        vcol = find(column);
    } else {
        if (tcol && *tcol == 0) vcol = 1;
        if (vcol >= table.header.size()) throw CliError(kUsage, "no value column besides the time column");
    }

    SeriesInput s;
    s.value_name = table.header[vcol];
    s.time_name = tcol ? table.header[*tcol] : "";
    Vector values;
    std::vector<bool> mask;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string cell = vcol < row.size() ? row[vcol] : "";
        double v = 0.0;
        if (cell.empty()) {
            values.push_back(0.0);
            mask.push_back(false);
        } else if (parse_number(cell, v)) {
            values.push_back(v);
            mask.push_back(true);
        } else {
            throw CliError(kNonNumeric, "row " + std::to_string(r + 2) + ", column '" + s.value_name +
                                            "': '" + cell + "' is not a number");
        }
        double tv = static_cast<double>(r + 1);
        if (tcol) {
            const std::string tc = *tcol < row.size() ? row[*tcol] : "";
            if (!parse_number(tc, tv))
                throw CliError(kNonNumeric, "row " + std::to_string(r + 2) + ", column '" + s.time_name +
                                                "': '" + tc + "' is not a number");
        }
        s.time.push_back(tv);
    }
    s.series = TimeSeries(std::move(values), std::move(mask));
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Penalized least-squares estimation of stochastic trends"};
    app.require_subcommand(1);

    FitFlags fit;
    auto* fit_cmd = app.add_subcommand("fit", "fit a trend to one CSV column, selecting (d, nu) unless both are given");
    add_series_flags(fit_cmd, fit.s);
    fit_cmd->add_option("--d", fit.d, "difference order")->check(CLI::Range(1, 6));
    fit_cmd->add_option("--nu", fit.nu, "penalty weight");
    fit_cmd->add_option("--alpha", fit.alpha, "prediction band level")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    fit_cmd->add_flag("--wls", fit.wls, "weight by the fitted residual AR covariance");
    fit_cmd->add_flag("--plot-data", fit.plot_data, "also write long-format plot_data.csv");
    fit_cmd->add_flag("--select", "select (d, nu); the default when --d or --nu is missing");

    SeriesFlags sel;
    auto* sel_cmd = app.add_subcommand("select", "criterion surface over d and the nu grid");
    add_series_flags(sel_cmd, sel);

    SimFlags sim;
    auto* sim_cmd = app.add_subcommand("simulate", "performance-ratio table or rate experiment");
    sim_cmd->add_option("--config", sim.config, "JSON config");
    sim_cmd->add_option("--experiment", sim.experiment, "table1 or rate")->check(CLI::IsMember({"table1", "rate"}));
    sim_cmd->add_option("--repeats", sim.repeats, "override repeats");
    sim_cmd->add_option("--seed", sim.seed, "override the base seed");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (0: all cores)");
    sim_cmd->add_option("--out-dir", sim.out_dir, "output directory");

    TheoryFlags th;
    auto* th_cmd = app.add_subcommand("theory", "exact traces against the asymptotic constants");
    th_cmd->add_option("--d", th.d, "difference order")->check(CLI::Range(1, 6));
    th_cmd->add_option("--n", th.n, "sample sizes")->delimiter(',');
    th_cmd->add_option("--ar", th.phi, "AR coefficients of the errors")->delimiter(',');
    th_cmd->add_option("--sigma2", th.sigma2, "innovation variance");
    th_cmd->add_option("--tau2", th.tau2, "trend variance scale");
    th_cmd->add_option("--tolerance", th.tolerance, "fail when a non-pre-asymptotic relative error exceeds this");
    th_cmd->add_option("--out-dir", th.out_dir, "output directory");

    std::uint64_t lemma_seed = 20240601;
    std::string lemma_out = ".";
    auto* lem_cmd = app.add_subcommand("lemmas", "structured-matrix bound suites");
    lem_cmd->add_option("--seed", lemma_seed, "corpus seed");
    lem_cmd->add_option("--out-dir", lemma_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit);
        if (*sel_cmd) return cmd_select(sel);
        if (*sim_cmd) return cmd_simulate(sim);
        if (*th_cmd) return cmd_theory(th);
        if (*lem_cmd) return cmd_lemmas(lemma_seed, lemma_out);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code();
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kTooShort;
    } catch (const InvalidOrderError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("stochtrend-cli");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace stochtrend::cli
