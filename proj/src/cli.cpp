#include "modzeros/cli.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "modzeros/faber.hpp"
#include "modzeros/halfplane.hpp"
#include "modzeros/modforms.hpp"
#include "modzeros/roots.hpp"

namespace modzeros::cli {

namespace {

class InvalidInput : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string complex_json(Complex z) { return "{\"re\": " + fmt17(z.real()) + ", \"im\": " + fmt17(z.imag()) + "}"; }

struct RunConfig {
    int k = 0;
    std::string m = "0";
    int degree = -1;
    int k_min = 0;
    int k_max = 0;
    int k_step = 0;
    int order = -1;
    double tol = 1e-10;
    std::string format;
    std::string out_path;
};

std::string pretty_polynomial(const FaberPoly& f)
{
    std::string s;
    const int d = f.degree();
    for (int s_idx = 0; s_idx <= d; ++s_idx) {
        const Rational& c = f.coeffs[static_cast<std::size_t>(s_idx)];
        const int power = d - s_idx;
        if (c == 0 && d > 0)
            continue;
        std::string mag = to_string(Rational(abs(c)));
        if (s.empty())
            s += (sgn(c) < 0 ? "-" : "");
        else
            s += (sgn(c) < 0 ? " - " : " + ");
        if (power == 0 || mag != "1")
            s += mag + (power > 0 ? "*" : "");
        if (power >= 1)
            s += "t";
        if (power >= 2)
            s += "^" + std::to_string(power);
    }
    return s.empty() ? "0" : s;
}

ModularFormSpec spec_for(int k, const std::string& m_text)
{
    const WeightDecomposition w = decompose_weight(k);
    return miller_form_spec(k, resolve_vanishing_order(m_text, w.ell));
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (format == a)
            return;
    throw InvalidInput("unsupported --format '" + format + "' for this subcommand");
}

std::string cmd_faber(const RunConfig& cfg)
{
    check_format(cfg.format, {"json", "csv", "pretty"});
    const FaberPoly f = faber_polynomial(spec_for(cfg.k, cfg.m));
    if (cfg.format == "pretty")
        return "F_{" + std::to_string(f.k) + "," + std::to_string(f.m) + "}(t) = " + pretty_polynomial(f) + "\n";
    if (cfg.format == "csv") {
        std::string s = "s,power,coeff\n";
        for (int i = 0; i <= f.degree(); ++i)
            s += std::to_string(i) + "," + std::to_string(f.degree() - i) + "," +
                 to_string(f.coeffs[static_cast<std::size_t>(i)]) + "\n";
        return s;
    }
    nlohmann::json j = f;
    return j.dump() + "\n";
}

std::string zero_report_json(const ZeroReport& report)
{
    std::string s = "{\"k\": " + std::to_string(report.k) + ", \"m\": " + std::to_string(report.m) +
                    ", \"D\": " + std::to_string(report.degree) + ", \"rows\": [";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        if (i > 0)
            s += ", ";
        s += "{\"r\": " + std::to_string(row.r) + ", \"t\": " + complex_json(row.t) +
             ", \"limit_z\": " + complex_json(row.limit_z) + ", \"tau\": ";
        s += row.tau ? complex_json(row.tau->tau) : "null";
        s += ", \"pred\": " + complex_json(row.tau_hat.tau) + ", \"abs_err\": ";
        s += row.abs_err ? fmt17(*row.abs_err) : "null";
        s += ", \"k_times_err\": ";
        s += row.k_times_err ? fmt17(*row.k_times_err) : "null";
        s += ", \"corollary_err\": " + fmt17(row.corollary_err) + "}";
    }
    return s + "]}\n";
}

std::string cmd_zeros(const RunConfig& cfg)
{
    check_format(cfg.format, {"csv", "json", "pretty"});
    const ZeroReport report = verify_theorem1(spec_for(cfg.k, cfg.m), cfg.tol);
    if (cfg.format == "json")
        return zero_report_json(report);
    if (cfg.format == "pretty") {
        std::ostringstream os;
        os << "k=" << report.k << " m=" << report.m << " D=" << report.degree << "\n";
        for (const auto& row : report.rows) {
            os << "r=" << row.r << "  t=" << fmt17(row.t.real()) << (row.t.imag() < 0 ? " - " : " + ")
               << fmt17(std::abs(row.t.imag())) << "i";
            if (row.tau)
                os << "  tau=" << fmt17(row.tau->tau.real()) << " + " << fmt17(row.tau->tau.imag()) << "i"
                   << "  k*err=" << fmt17(*row.k_times_err);
            else
                os << "  (" << kOutsideRegime << ")";
            os << "\n";
        }
        return os.str();
    }
    return std::string(kZeroReportHeader) + "\n" + zero_report_csv_rows(report);
}

void require_degree(int degree, int max_degree)
{
    if (degree < 1 || degree > max_degree)
        throw InvalidInput("--D must be in [1, " + std::to_string(max_degree) + "]");
}

std::string cmd_exp_zeros(const RunConfig& cfg)
{
    check_format(cfg.format, {"json", "csv"});
    require_degree(cfg.degree, 64);
    const RootSet zs = truncated_exp_inverse_zeros(cfg.degree);
    if (cfg.format == "csv") {
        std::string s = "r,re,im,arg\n";
        for (std::size_t r = 0; r < zs.roots.size(); ++r)
            s += std::to_string(r + 1) + "," + fmt17(zs.roots[r].real()) + "," + fmt17(zs.roots[r].imag()) + "," +
                 fmt17(arg_half_open(zs.roots[r])) + "\n";
        return s;
    }
    return root_set_json(zs) + "\n";
}

std::string cmd_predict(const RunConfig& cfg)
{
    check_format(cfg.format, {"json", "csv"});
    require_degree(cfg.degree, 64);
    decompose_weight(cfg.k);
    const RootSet zs = truncated_exp_inverse_zeros(cfg.degree);
    std::string s = cfg.format == "csv" ? "k,r,pred_re,pred_im\n" : "{\"k\": " + std::to_string(cfg.k) + ", \"D\": " + std::to_string(cfg.degree) + ", \"points\": [";
    for (std::size_t r = 0; r < zs.roots.size(); ++r) {
        const HalfPlanePoint p = predicted_zero(cfg.k, zs.roots[r]);
        if (cfg.format == "csv")
            s += std::to_string(cfg.k) + "," + std::to_string(r + 1) + "," + fmt17(p.tau.real()) + "," +
                 fmt17(p.tau.imag()) + "\n";
        else
            s += std::string(r > 0 ? ", " : "") + "{\"r\": " + std::to_string(r + 1) + ", \"tau\": " +
                 complex_json(p.tau) + ", \"reduced\": " + (p.reduced ? "true" : "false") + "}";
    }
    if (cfg.format == "json")
        s += "]}\n";
    return s;
}

std::string cmd_figure(const RunConfig& cfg)
{
    check_format(cfg.format, {"csv", "json"});
    require_degree(cfg.degree, 64);
    const std::vector<int> grid = weight_grid(cfg.k_min, cfg.k_max, cfg.k_step);
    const RootSet zs = truncated_exp_inverse_zeros(cfg.degree);
    std::string s = cfg.format == "csv" ? "k,r,pred_re,pred_im\n" : "[";
    bool first = true;
    for (int k : grid) {
        for (std::size_t r = 0; r < zs.roots.size(); ++r) {
            const HalfPlanePoint p = predicted_zero(k, zs.roots[r]);
            if (cfg.format == "csv") {
                s += std::to_string(k) + "," + std::to_string(r + 1) + "," + fmt17(p.tau.real()) + "," +
                     fmt17(p.tau.imag()) + "\n";
            } else {
                s += std::string(first ? "" : ", ") + "{\"k\": " + std::to_string(k) + ", \"r\": " +
                     std::to_string(r + 1) + ", \"tau\": " + complex_json(p.tau) + "}";
                first = false;
            }
        }
    }
    if (cfg.format == "json")
        s += "]\n";
    return s;
}

struct GridEntry {
    int k = 0;
    std::vector<double> coeff_dev; // k |x_s s!/(2k)^s - 1|, s = 0..D
    ZeroReport report;
};

GridEntry evaluate_grid_entry(int k, int degree, double tol)
{
    const WeightDecomposition w = decompose_weight(k);
    if (w.ell < degree)
        throw InvalidInput("weight " + std::to_string(k) + " has ell=" + std::to_string(w.ell) + " < D");
    const ModularFormSpec spec = miller_form_spec(k, w.ell - degree);
    const FaberPoly f = faber_polynomial(spec);
    GridEntry e{k, {}, verify_theorem1(spec, tol)};
    for (const auto& dev : renormalized_coeffs(f, k))
        e.coeff_dev.push_back(to_double(Rational(k) * abs(dev)));
    return e;
}

struct Verdict {
    bool bounded = true;
    std::vector<std::string> notes;
};

// Every monitored sequence must stay within 1.5x its first entry.
Verdict judge(const std::vector<GridEntry>& entries, int degree)
{
    constexpr double kGrowthAllowance = 1.5;
    Verdict v;
    for (int s = 0; s <= degree; ++s) {
        const double first = entries.front().coeff_dev[static_cast<std::size_t>(s)];
        for (const auto& e : entries)
            if (e.coeff_dev[static_cast<std::size_t>(s)] > kGrowthAllowance * first) {
                v.bounded = false;
                v.notes.push_back("coefficient s=" + std::to_string(s) + " exceeds 1.5x its first value at k=" +
                                  std::to_string(e.k));
            }
    }
    for (int r = 0; r < degree; ++r) {
        std::optional<double> first;
        for (const auto& e : entries) {
            const auto& row = e.report.rows[static_cast<std::size_t>(r)];
            if (!row.k_times_err)
                continue;
            if (!first)
                first = *row.k_times_err;
            else if (*row.k_times_err > kGrowthAllowance * *first) {
                v.bounded = false;
                v.notes.push_back("zero r=" + std::to_string(r + 1) + " k*err exceeds 1.5x its first value at k=" +
                                  std::to_string(e.k));
            }
        }
    }
    return v;
}

std::string cmd_verify(const RunConfig& cfg, bool& bounded, std::ostream& err)
{
    check_format(cfg.format, {"csv"});
    require_degree(cfg.degree, 8);
    const std::vector<int> grid = weight_grid(cfg.k_min, cfg.k_max, cfg.k_step);

    std::vector<std::future<GridEntry>> jobs;
    for (int k : grid)
        jobs.push_back(std::async(std::launch::async, evaluate_grid_entry, k, cfg.degree, cfg.tol));
    std::vector<GridEntry> entries;
    for (auto& job : jobs)
        entries.push_back(job.get());

    std::string s = "quantity,D,k,index,value\n";
    for (const auto& e : entries) {
        for (std::size_t i = 0; i < e.coeff_dev.size(); ++i)
            s += "coeff_dev," + std::to_string(cfg.degree) + "," + std::to_string(e.k) + "," + std::to_string(i) +
                 "," + fmt17(e.coeff_dev[i]) + "\n";
        for (const auto& row : e.report.rows)
            s += "zero_k_err," + std::to_string(cfg.degree) + "," + std::to_string(e.k) + "," +
                 std::to_string(row.r) + "," + (row.k_times_err ? fmt17(*row.k_times_err) : kOutsideRegime) + "\n";
    }
    const Verdict v = judge(entries, cfg.degree);
    for (const auto& note : v.notes)
        err << "verify: " << note << "\n";
    err << "verify: " << (v.bounded ? "all monitored sequences bounded" : "verification failed") << "\n";
    bounded = v.bounded;
    return s;
}

std::string cmd_basis(const RunConfig& cfg)
{
    check_format(cfg.format, {"json"});
    const WeightDecomposition w = decompose_weight(cfg.k);
    const int order = cfg.order < 0 ? w.ell + 1 : cfg.order;
    nlohmann::json j = nlohmann::json::array();
    for (const auto& series : miller_basis_series(cfg.k, order))
        j.push_back(series);
    return j.dump() + "\n";
}

} // namespace

int resolve_vanishing_order(const std::string& text, int ell)
{
    if (text.rfind("last", 0) == 0) {
        const std::string rest = text.substr(4);
        if (rest.empty())
            return ell;
        if (rest.size() < 2 || rest[0] != '-')
            throw InvalidInput("bad --m alias '" + text + "'");
        std::size_t used = 0;
        int back = 0;
        try {
            back = std::stoi(rest.substr(1), &used);
        } catch (const std::exception&) {
            throw InvalidInput("bad --m alias '" + text + "'");
        }
        if (used != rest.size() - 1 || back < 0)
            throw InvalidInput("bad --m alias '" + text + "'");
        if (back > ell)
            throw InvalidInput("--m alias '" + text + "' is below 0 for ell = " + std::to_string(ell));
        return ell - back;
    }
    std::size_t used = 0;
    int m = 0;
    try {
        m = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw InvalidInput("bad --m value '" + text + "'");
    }
    if (used != text.size())
        throw InvalidInput("bad --m value '" + text + "'");
    return m;
}

std::vector<int> weight_grid(int k_min, int k_max, int k_step)
{
    if (k_min <= 0 || k_min > k_max || k_step < 0)
        throw InvalidInput("grid needs 0 < k-min <= k-max and k-step > 0");
    if (k_min % 2 != 0 || k_max % 2 != 0 || k_step % 2 != 0)
        throw InvalidInput("grid bounds and step must be even");
    std::vector<int> grid;
    for (long k = k_min; k <= k_max; k = k_step > 0 ? k + k_step : 2 * k)
        grid.push_back(static_cast<int>(k));
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Faber polynomials and zeros of modular forms with high vanishing order at infinity", "modzeros"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    const auto add_common = [&](CLI::App* sub, const std::string& default_format) {
        cfg.format = default_format;
        sub->add_option("--format", cfg.format, "json, csv or pretty (support varies)");
        sub->add_option("--out", cfg.out_path, "write data to this file instead of stdout");
    };
    std::map<std::string, std::string> default_formats{{"faber", "json"}, {"zeros", "csv"},  {"exp-zeros", "json"},
                                                       {"predict", "json"}, {"figure", "csv"}, {"verify", "csv"},
                                                       {"basis", "json"}};

    auto* faber = app.add_subcommand("faber", "exact Faber polynomial of the Miller form f_{k,m}");
    faber->add_option("--k", cfg.k, "weight")->required();
    faber->add_option("--m", cfg.m, "vanishing order: integer, last, last-1, ...")->required();

    auto* zeros = app.add_subcommand("zeros", "Faber roots, their zeros in the half-plane and predictions");
    zeros->add_option("--k", cfg.k, "weight")->required();
    zeros->add_option("--m", cfg.m, "vanishing order: integer, last, last-1, ...")->required();
    zeros->add_option("--tol", cfg.tol, "relative tolerance");

    auto* exp_zeros = app.add_subcommand("exp-zeros", "inverse zeros z_{D,r} of the truncated exponential");
    exp_zeros->add_option("--D", cfg.degree, "degree")->required();

    auto* predict = app.add_subcommand("predict", "predicted zero locations for weight k and degree D");
    predict->add_option("--k", cfg.k, "weight")->required();
    predict->add_option("--D", cfg.degree, "degree")->required();

    auto* figure = app.add_subcommand("figure", "predicted point cloud over a weight grid");
    auto* verify = app.add_subcommand("verify", "convergence check over a weight grid");
    for (auto* sub : {figure, verify}) {
        sub->add_option("--D", cfg.degree, "degree")->required();
        sub->add_option("--k-min", cfg.k_min, "first weight")->required();
        sub->add_option("--k-max", cfg.k_max, "last weight")->required();
        sub->add_option("--k-step", cfg.k_step, "linear step; omit for a doubling grid");
    }
    verify->add_option("--tol", cfg.tol, "relative tolerance");

    auto* basis = app.add_subcommand("basis", "Miller basis q-expansions of M_k");
    basis->add_option("--k", cfg.k, "weight")->required();
    basis->add_option("--order", cfg.order, "series order (default ell+1)");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        add_common(sub, "");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "modzeros: " << e.what() << "\n";
        return kInvalidInput;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (cfg.format.empty())
        cfg.format = default_formats.at(name);

    std::string data;
    int code = kSuccess;
    try {
        if (name == "faber")
            data = cmd_faber(cfg);
        else if (name == "zeros")
            data = cmd_zeros(cfg);
        else if (name == "exp-zeros")
            data = cmd_exp_zeros(cfg);
        else if (name == "predict")
            data = cmd_predict(cfg);
        else if (name == "figure")
            data = cmd_figure(cfg);
        else if (name == "verify") {
            bool bounded = true;
            data = cmd_verify(cfg, bounded, err);
            code = bounded ? kSuccess : kVerificationFailed;
        } else
            data = cmd_basis(cfg);
    } catch (const NumericalFailure& e) {
        err << "modzeros: numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::domain_error& e) {
        err << "modzeros: invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "modzeros: invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "modzeros: " << e.what() << "\n";
        return kNumericalFailure;
    }

    if (cfg.out_path.empty()) {
        out << data;
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "modzeros: cannot open " << cfg.out_path << "\n";
            return kInvalidInput;
        }
        file << data;
    }
    return code;
}

} // namespace modzeros::cli
