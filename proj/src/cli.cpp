#include "paircorr/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "paircorr/csv.hpp"
#include "paircorr/error.hpp"
#include "paircorr/form_factor.hpp"
#include "paircorr/formulas.hpp"
#include "paircorr/parallel.hpp"
#include "paircorr/singular_series.hpp"
#include "paircorr/smoothing.hpp"
#include "paircorr/verify.hpp"
#include "paircorr/zeros.hpp"

namespace paircorr::cli {

namespace {

namespace fs = std::filesystem;

// Thrown for bad flags or configuration; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    std::size_t line;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<ConfigEntry> read_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(fmt::format("cannot open config {}: {}", path.string(), std::strerror(errno)));
    std::vector<ConfigEntry> entries;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw DataError("config: expected 'key = value'", line);
        ConfigEntry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
        if (e.key.empty()) throw DataError("config: empty key", line);
        entries.push_back(std::move(e));
    }
    return entries;
}

// Moves --config FILE out of args and appends each file entry as --key=value
// unless the same flag is already on the command line.
void apply_config(CLI::App& app, std::vector<std::string>& args) {
    std::optional<std::string> config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file");
            config_path = args[i + 1];
            args.erase(args.begin() + std::ptrdiff_t(i), args.begin() + std::ptrdiff_t(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + std::ptrdiff_t(i));
            break;
        }
    }
    if (!config_path) return;

    CLI::App* target = &app;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (!args[i].empty() && args[i].front() == '-') break;
        if (auto* sub = target->get_subcommand_no_throw(args[i])) {
            target = sub;
        } else {
            break;
        }
    }
    auto given = [&](const std::string& key) {
        const std::string flag = "--" + key;
        return std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    for (const auto& e : read_config(*config_path)) {
        const std::string flag = "--" + e.key;
        bool known = false;
        for (CLI::App* a = target; a != nullptr && !known; a = a->get_parent()) {
            known = a->get_option_no_throw(flag) != nullptr;
        }
        if (!known || e.key == "help" || e.key == "config") {
            throw DataError(fmt::format("config: unknown key '{}'", e.key), e.line);
        }
        if (!given(e.key)) args.push_back(flag + "=" + e.value);
    }
}

fs::path resolve_data_path(const std::string& name) {
    const fs::path p(name);
    if (fs::exists(p) || p.is_absolute()) return p;
    if (const char* dir = std::getenv("PAIRCORR_DATA"); dir && *dir) {
        const fs::path candidate = fs::path(dir) / p;
        if (fs::exists(candidate)) return candidate;
    }
    return p;
}

zeros::ZeroDataset load(const std::string& name, std::ostream& err) {
    auto zs = zeros::load_zeros(resolve_data_path(name));
    for (const auto& w : zs.warnings) err << "warning: " << w << '\n';
    return zs;
}

// Writes to --out when given ("-" or empty means the primary stream).
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw DataError(fmt::format("cannot write {}: {}", path, std::strerror(errno)));
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw DataError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct TableOptions {
    std::uint32_t sieve_limit = 10'000'000;
    std::uint32_t hmax = 1'000'000;
};

struct Tables {
    arith::PrimeSieve sieve;
    singular::Constants constants;
    singular::SingularTable table;

    explicit Tables(const TableOptions& o)
        : sieve(std::max(o.sieve_limit, o.hmax)),
          constants(singular::Constants::from_twin_prime_constant(
              singular::twin_prime_constant_corrected(o.sieve_limit, sieve))),
          table(o.hmax, constants, sieve) {}
};

void add_table_options(CLI::App* cmd, TableOptions& o) {
    cmd->add_option("--sieve-limit", o.sieve_limit, "Primes used for the twin-prime constant")
        ->check(CLI::Range(1000u, 100'000'000u));
    cmd->add_option("--hmax", o.hmax, "Singular-series table size")->check(CLI::Range(100u, 100'000'000u));
}

}  // namespace

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pair correlation of zeta zeros: estimators, predictions and checks", "paircorr"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (default: hardware)")->check(CLI::Range(1u, 4096u));
    app.add_option("--config", "File of 'key = value' lines; command-line flags win");

    std::function<int()> action;

    // zeros validate
    auto* zeros_cmd = app.add_subcommand("zeros", "Zero-table utilities")->require_subcommand(1);
    std::string validate_path;
    auto* validate = zeros_cmd->add_subcommand("validate", "Check a zero file; prints count,min,max");
    validate->add_option("file", validate_path, "Zero file")->required();
    validate->callback([&] {
        action = [&] {
            const auto zs = load(validate_path, err);
            out << "count,min,max\n"
                << zs.size() << ',' << csv::num(zs.ordinates.front()) << ',' << csv::num(zs.ordinates.back()) << '\n';
            return kExitOk;
        };
    });

    // verify
    std::string suite_text = "all";
    std::string verify_zeros;
    std::optional<double> override_A;
    TableOptions verify_tables;
    auto* verify = app.add_subcommand("verify", "Run numerical property checks");
    verify->add_option("suite", suite_text, "arithmetic|singular|smoothing|oscillatory|paircorr|formulas|all")
        ->check(CLI::IsMember({"arithmetic", "singular", "smoothing", "oscillatory", "paircorr", "formulas", "all"}));
    verify->add_option("--zeros", verify_zeros, "Real zero file for the paircorr checks");
    verify->add_option("--set-A", override_A, "Replace the constant A (mutation testing)");
    add_table_options(verify, verify_tables);
    verify->callback([&] {
        action = [&] {
            auto ctx = verify::Context::standard(verify_tables.sieve_limit, verify_tables.hmax);
            if (override_A) ctx.constants.A = *override_A;
            if (!verify_zeros.empty()) ctx.zeros = load(verify_zeros, err);
            bool ok = true;
            for (const auto& c : verify::run(*verify::parse_suite(suite_text), ctx)) {
                out << verify::format(c) << '\n' << std::flush;
                ok = ok && c.pass;
            }
            return ok ? kExitOk : kExitCheckFailed;
        };
    });

    // fxt
    auto* fxt = app.add_subcommand("fxt", "F(x,T): estimators, formula, comparison")->require_subcommand(1);
    std::string fx_zeros;
    double fx_x = 0, fx_T = 0, fx_cutoff = 0, fx_tol = 1e-8;
    bool fx_exact = false;
    auto estimator = [&](const std::string& name, pc::Method method) {
        auto* cmd = fxt->add_subcommand(name, fmt::format("Empirical F(x,T), {} method", name));
        cmd->add_option("--zeros", fx_zeros, "Zero file")->required();
        cmd->add_option("--x", fx_x, "x > 1")->required()->check(CLI::Range(1.0, 1e300));
        cmd->add_option("--T", fx_T, "Height T")->required()->check(CLI::PositiveNumber);
        if (method == pc::Method::direct) {
            auto* cut = cmd->add_option("--cutoff", fx_cutoff, "Largest gap summed")->check(CLI::PositiveNumber);
            cmd->add_flag("--exact", fx_exact, "Sum every pair")->excludes(cut);
        } else {
            cmd->add_option("--tol", fx_tol, "Absolute tolerance")->check(CLI::PositiveNumber);
        }
        cmd->callback([&, method] {
            action = [&, method] {
                const auto zs = load(fx_zeros, err);
                pc::PairCorrelationEstimate est;
                if (method == pc::Method::direct) {
                    pc::DirectOptions o;
                    o.exact = fx_exact;
                    o.gap_cutoff = fx_cutoff;
                    est = pc::f_direct(zs, fx_x, fx_T, o);
                } else {
                    pc::IntegralOptions o;
                    o.abs_tol = fx_tol;
                    est = pc::f_integral(zs, fx_x, fx_T, o);
                }
                out << "x,T,method,value,error_bound,pairs\n"
                    << csv::num(fx_x) << ',' << csv::num(fx_T) << ',' << pc::method_name(method) << ','
                    << csv::num(est.value) << ',' << csv::num(est.truncation_error_bound) << ','
                    << csv::num(est.pair_count_used) << '\n';
                return kExitOk;
            };
        });
    };
    estimator("direct", pc::Method::direct);
    estimator("integral", pc::Method::integral);

    formulas::FormulaParams fp;
    bool breakdown = false;
    TableOptions formula_tables;
    auto* formula = fxt->add_subcommand("formula", "Seven-term prediction for F(x,T)");
    formula->add_option("--T", fp.T, "Height T")->required()->check(CLI::Range(3.0, 1e300));
    formula->add_option("--x", fp.x, "x")->required()->check(CLI::PositiveNumber);
    formula->add_option("--M", fp.M, "Smoothing exponent M > 2")->check(CLI::Range(3, 1000));
    formula->add_option("--eps", fp.epsilon, "epsilon in (0, 0.05]")->check(CLI::Range(1e-12, 0.05));
    formula->add_option("--K", fp.K, "Smoothing order")->check(CLI::Range(smooth::SmoothWeight::kMinK, smooth::SmoothWeight::kMaxK));
    formula->add_flag("--breakdown", breakdown, "Print every term as term,value rows");
    add_table_options(formula, formula_tables);
    formula->callback([&] {
        action = [&] {
            fp.check_range();
            const Tables tables(formula_tables);
            const auto b = formulas::theorem1(fp, tables.table);
            for (const auto& w : b.warnings) err << "warning: " << w << '\n';
            if (breakdown) {
                out << "term,value\n";
                const std::pair<const char*, double> rows[] = {
                    {"leading", b.leading}, {"t1", b.t1}, {"t2", b.t2}, {"t3", b.t3}, {"t4", b.t4},
                    {"t5", b.t5}, {"t6", b.t6}, {"t7", b.t7}, {"total", b.total},
                    {"error_budget", b.error_budget}, {"numerical_error", b.numerical_error},
                    {"H_star", b.H_star}, {"singular_sum", b.singular_sum}};
                for (const auto& [name, v] : rows) out << name << ',' << csv::num(v) << '\n';
            } else {
                out << "x,T,total,error_budget\n"
                    << csv::num(fp.x) << ',' << csv::num(fp.T) << ',' << csv::num(b.total) << ','
                    << csv::num(b.error_budget) << '\n';
            }
            return kExitOk;
        };
    });

    std::string cmp_zeros, cmp_out, cmp_method = "direct";
    double cmp_T = 0, cmp_xmin = 0, cmp_xmax = 0;
    int cmp_points = 20;
    formulas::CompareOptions cmp_opts;
    TableOptions cmp_tables;
    auto* compare = fxt->add_subcommand("compare", "Empirical F against the predictions on an x grid");
    compare->add_option("--zeros", cmp_zeros, "Zero file")->required();
    compare->add_option("--T", cmp_T, "Height (default: last ordinate)")->check(CLI::PositiveNumber);
    compare->add_option("--x-min", cmp_xmin, "Smallest x")->required()->check(CLI::Range(1.0, 1e300));
    compare->add_option("--x-max", cmp_xmax, "Largest x")->required()->check(CLI::Range(1.0, 1e300));
    compare->add_option("--points", cmp_points, "Grid size")->check(CLI::Range(0, 100000));
    compare->add_option("--out", cmp_out, "Output CSV (default stdout)");
    compare->add_option("--method", cmp_method, "direct|integral")->check(CLI::IsMember({"direct", "integral"}));
    compare->add_option("--M", cmp_opts.M, "Smoothing exponent M > 2")->check(CLI::Range(3, 1000));
    compare->add_option("--eps", cmp_opts.epsilon, "epsilon in (0, 0.05]")->check(CLI::Range(1e-12, 0.05));
    compare->add_option("--K", cmp_opts.K, "Smoothing order")->check(CLI::Range(smooth::SmoothWeight::kMinK, smooth::SmoothWeight::kMaxK));
    add_table_options(compare, cmp_tables);
    compare->callback([&] {
        action = [&] {
            if (cmp_xmax < cmp_xmin) throw UsageError("--x-max must not be below --x-min");
            const auto zs = load(cmp_zeros, err);
            const double T = cmp_T > 0 ? cmp_T : zs.max_height;
            cmp_opts.method = cmp_method == "integral" ? pc::Method::integral : pc::Method::direct;
            const Tables tables(cmp_tables);
            const auto rows = formulas::compare(zs, T, formulas::log_grid(cmp_xmin, cmp_xmax, cmp_points),
                                                tables.table, cmp_opts);
            for (const auto& r : rows) {
                for (const auto& e : r.errors) err << "x=" << csv::num(r.x) << ": " << e << '\n';
            }
            Sink sink(cmp_out, out);
            *sink << formulas::comparison_csv(rows);
            sink.finish();
            return kExitOk;
        };
    });

    // singular table
    auto* singular_cmd = app.add_subcommand("singular", "Singular-series utilities")->require_subcommand(1);
    TableOptions st_tables;
    std::string st_out;
    auto* table_cmd = singular_cmd->add_subcommand("table", "h,singular_series,prefix0,epsilon,f for h = 1..hmax");
    table_cmd->add_option("--hmax", st_tables.hmax, "Largest h")->required()->check(CLI::Range(1u, 100'000'000u));
    table_cmd->add_option("--sieve-limit", st_tables.sieve_limit, "Primes used for the twin-prime constant")
        ->check(CLI::Range(1000u, 100'000'000u));
    table_cmd->add_option("--out", st_out, "Output CSV (default stdout)");
    table_cmd->callback([&] {
        action = [&] {
            const Tables tables(st_tables);
            const auto& tb = tables.table;
            Sink sink(st_out, out);
            std::string buf = "h,singular_series,prefix0,epsilon,f\n";
            for (std::uint32_t h = 1; h <= tb.hmax(); ++h) {
                buf += fmt::format("{},{},{},{},{}\n", h, csv::num(tb.value(h)), csv::num(tb.prefix0(h)),
                                   csv::num(tb.partial_sum_fluctuation(h)), csv::num(tb.f_at_integer(h)));
                if (buf.size() > (1u << 20)) {
                    *sink << buf;
                    buf.clear();
                }
            }
            *sink << buf;
            sink.finish();
            return kExitOk;
        };
    });

    // smoothing profile
    auto* smoothing_cmd = app.add_subcommand("smoothing", "Smooth cutoff utilities")->require_subcommand(1);
    double sp_U = 10;
    int sp_K = 4, sp_points = 2001;
    std::string sp_out;
    auto* profile = smoothing_cmd->add_subcommand("profile", "t,psi and y,re_psi_hat blocks");
    profile->add_option("--U", sp_U, "Scale U")->required()->check(CLI::PositiveNumber);
    profile->add_option("--K", sp_K, "Smoothing order")->required()->check(CLI::Range(smooth::SmoothWeight::kMinK, smooth::SmoothWeight::kMaxK));
    profile->add_option("--points", sp_points, "Samples per block")->check(CLI::Range(2, 10'000'000));
    profile->add_option("--out", sp_out, "Output CSV (default stdout)");
    profile->callback([&] {
        action = [&] {
            const auto w = smooth::SmoothWeight::from_scale(sp_U, sp_K);
            const double reach = (w.K() + 1) * w.delta();
            Sink sink(sp_out, out);
            *sink << "t,psi\n";
            for (int i = 0; i < sp_points; ++i) {
                const double t = -2 * reach + (1 + 4 * reach) * i / (sp_points - 1);
                *sink << csv::num(t) << ',' << csv::num(w.psi(t)) << '\n';
            }
            *sink << "y,re_psi_hat\n";
            const double ymax = 4.0 / w.delta();
            for (int i = 0; i < sp_points; ++i) {
                const double y = ymax * i / (sp_points - 1);
                *sink << csv::num(y) << ',' << csv::num(w.re_psi_hat(y)) << '\n';
            }
            sink.finish();
            return kExitOk;
        };
    });

    try {
        std::vector<std::string> args = input;
        if (args.empty()) args.emplace_back("paircorr");
        apply_config(app, args);
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
        parallel::set_max_threads(threads);
        return action ? action() : kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace paircorr::cli
