#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gblab/catalog/catalog.hpp"
#include "gblab/errors.hpp"
#include "gblab/verify/verify.hpp"

namespace fs = std::filesystem;
using namespace gblab;
using namespace gblab::verify;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GeometryArg {
    std::string name;
    ParamMap params;
};

GeometryArg parse_geometry(const std::vector<std::string>& args) {
    GeometryArg g;
    if (args.empty()) return g;
    g.name = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) {
        const auto eq = args[i].find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("geometry parameter must be key=value: '" + args[i] + "'");
        const std::string key = args[i].substr(0, eq);
        if (g.params.count(key)) throw ConfigError("geometry parameter given twice: " + key);
        g.params[key] = args[i].substr(eq + 1);
    }
    return g;
}

std::string params_text(const ParamMap& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v;
    return s;
}

std::string output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("GBLAB_OUTPUT_DIR")) return env;
    return "";
}

fs::path place(const std::string& path, const std::string& out) {
    const fs::path p(path);
    return p.is_absolute() || out.empty() ? p : fs::path(out) / p;
}

void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << text;
}

std::string safe(std::string s) {
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') c = '_';
    return s;
}

void print_result(const CheckResult& r) {
    std::printf("%s %-22s %-22s %-20s %-28s value=%.12g reference=%.12g residual=%.3g tol=%.3g (%s)\n",
                r.pass ? "PASS" : "FAIL", r.id.c_str(), r.quantity.c_str(), r.geometry.c_str(), params_text(r.params).c_str(),
                r.value, r.reference, r.tol_kind == TolKind::absolute ? r.abs_residual : r.rel_residual, r.tolerance,
                tol_kind_name(r.tol_kind));
    for (const auto& n : r.notes)
        if (n.rfind("error:", 0) == 0) std::printf("     %s\n", n.c_str());
}

int cmd_list() {
    std::printf("geometries:\n");
    for (const auto& e : catalog_list()) {
        std::string p;
        for (const auto& s : e.params) p += (p.empty() ? "" : " ") + s.name + "=" + s.default_value;
        std::printf("  %-22s %s%s%s\n", e.name.c_str(), e.summary.c_str(), p.empty() ? "" : "  [", p.empty() ? "" : (p + "]").c_str());
    }
    for (const auto& n : registered_geometries()) std::printf("  %-22s (custom)\n", n.c_str());
    std::printf("checks:\n");
    for (const auto& c : check_list())
        std::printf("  %-22s %s (%zu default instances)\n", c.id.c_str(), c.summary.c_str(), c.instances.size());
    return 0;
}

int cmd_describe(const GeometryArg& g) {
    if (g.name.empty()) throw ConfigError("describe needs a geometry name");
    const GeometrySpec s = catalog_get(g.name, g.params);
    std::printf("name: %s\nbuiltin: %s\n", s.name.c_str(), s.builtin.c_str());
    const CatalogEntry& e = catalog_entry(s.builtin);
    std::printf("summary: %s\nparameters:\n", e.summary.c_str());
    for (const auto& p : e.params) {
        std::string range;
        if (p.kind == ParamSpec::Kind::choice) {
            for (const auto& c : p.choices) range += (range.empty() ? "" : "|") + c;
        } else {
            range = "[" + std::to_string(p.min) + ", " + std::to_string(p.max) + "]";
        }
        std::printf("  %-8s = %-10s %s %s\n", p.name.c_str(), s.params.at(p.name).c_str(), range.c_str(), p.doc.c_str());
    }
    std::printf("dimension: %d\ncharts: %zu\n", s.dim, s.charts.size());
    for (const auto& st : s.strata)
        std::printf("stratum: %s (%s), epsilon %+d, normal %+d d_r\n", st.name.c_str(), stratum_kind_name(st.kind),
                    st.collar.epsilon, st.collar.normal_sign());
    if (s.fibration) std::printf("fibration: base dim %d, fiber dim %d\n", s.fibration->base_dim, s.fibration->fiber_dim);
    std::printf("symmetry weight: %d/%d\nchi_ref: %g\n", s.symmetry_weight.num, s.symmetry_weight.den, s.chi_ref);
    for (const auto& [k, v] : s.chi_pieces) std::printf("chi_pieces.%s: %g\n", k.c_str(), v);
    for (const auto& [k, v] : s.data) std::printf("data.%s: %.12g\n", k.c_str(), v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gblab: numerical Gauss-Bonnet verification"};
    app.require_subcommand(1);

    std::vector<std::string> config_files;
    app.add_option("--config", config_files, "geometry config file to register (repeatable)")->check(CLI::ExistingFile);

    auto* list = app.add_subcommand("list", "list geometries and checks");

    auto* describe = app.add_subcommand("describe", "describe a geometry");
    std::vector<std::string> describe_args;
    describe->add_option("geometry", describe_args, "NAME [k=v ...]")->required()->expected(1, -1);

    auto* run = app.add_subcommand("run", "run checks");
    std::string check_id, filter, json_path, csv_dir, out_dir;
    std::vector<std::string> geometry_args;
    int level = 0, workers = 1;
    std::optional<double> tol;
    run->add_option("--check", check_id, "check id");
    run->add_option("--filter", filter, "case-insensitive substring of check ids");
    run->add_option("--geometry", geometry_args, "NAME [k=v ...]")->expected(1, -1);
    run->add_option("--level", level, "resolution level")->check(CLI::Range(1, 7));
    run->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
    run->add_option("--json", json_path, "JSON report path ('-' for stdout)");
    run->add_option("--csv", csv_dir, "directory for CSV tables");
    run->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
    run->add_option("--out", out_dir, "output directory (default $GBLAB_OUTPUT_DIR)");

    auto* conv = app.add_subcommand("converge", "convergence study over levels 1..L");
    std::string conv_check, conv_csv;
    std::vector<std::string> conv_geometry;
    int levels = 3;
    conv->add_option("--check", conv_check, "check id")->required();
    conv->add_option("--levels", levels, "number of levels")->check(CLI::Range(1, 7));
    conv->add_option("--geometry", conv_geometry, "NAME [k=v ...]")->expected(1, -1);
    conv->add_option("--csv", conv_csv, "CSV output path");
    conv->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
    conv->add_option("--out", out_dir, "output directory (default $GBLAB_OUTPUT_DIR)");

    auto* cal = app.add_subcommand("calibrate", "recompute the slice orientation flags on the anchor geometries");
    std::string cal_json;
    cal->add_option("--json", cal_json, "JSON output path ('-' for stdout)");
    cal->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
    cal->add_option("--out", out_dir, "output directory (default $GBLAB_OUTPUT_DIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        for (const auto& f : config_files) register_geometry(load_geometry_config(f));
        const std::string out = output_dir(out_dir);
        RunOptions opt;
        opt.level = level;
        opt.tol = tol;
        opt.workers = workers;

        if (*list) return cmd_list();
        if (*describe) return cmd_describe(parse_geometry(describe_args));

        if (*run) {
            const GeometryArg g = parse_geometry(geometry_args);
            SuiteResult suite;
            if (!check_id.empty()) {
                if (!filter.empty()) throw ConfigError("--check and --filter are exclusive");
                suite.filter = check_id;
                suite.results = run_check(check_id, g.name, g.params, opt);
                for (const auto& r : suite.results) (r.pass ? suite.passed : suite.failed)++;
            } else {
                if (!g.name.empty()) throw ConfigError("--geometry needs --check");
                suite = run_suite(filter, opt);
            }
            std::map<std::size_t, std::string> refs;
            if (!csv_dir.empty()) {
                const fs::path dir = place(csv_dir, out);
                for (std::size_t i = 0; i < suite.results.size(); ++i) {
                    const CheckResult& r = suite.results[i];
                    for (std::size_t t = 0; t < r.tables.size(); ++t) {
                        const std::string name = safe(std::to_string(i) + "_" + r.id + "_" + r.quantity + "_" + r.tables[t].name) + ".csv";
                        write_file(dir / name, r.tables[t].to_csv());
                        if (t == 0) refs[i] = name;
                    }
                }
            }
            for (const auto& r : suite.results) print_result(r);
            std::printf("%d passed, %d failed\n", suite.passed, suite.failed);
            const std::string json = to_json(suite, opt, refs);
            if (json_path == "-") {
                std::fputs(json.c_str(), stdout);
            } else if (!json_path.empty()) {
                write_file(place(json_path, out), json);
            } else if (!out.empty()) {
                write_file(fs::path(out) / "report.json", json);
            }
            return suite.all_passed() ? 0 : kExitFail;
        }

        if (*conv) {
            const CheckInfo& info = check_info(conv_check);
            CheckInstance inst = info.instances.front();
            const GeometryArg g = parse_geometry(conv_geometry);
            if (!g.name.empty()) {
                inst.geometry = g.name;
                inst.params = g.params;
            }
            const ConvergenceTable t = converge(inst, levels, opt);
            const std::string csv = t.to_csv();
            std::fputs(csv.c_str(), stdout);
            if (!conv_csv.empty()) {
                write_file(place(conv_csv, out), csv);
            } else if (!out.empty()) {
                write_file(fs::path(out) / safe("converge_" + inst.id + ".csv"), csv);
            }
            return 0;
        }

        if (*cal) {
            const auto entries = calibrate(opt);
            bool ok = true;
            for (const auto& e : entries) {
                std::printf("%-9s %-28s residual(+1)=%.3e residual(-1)=%.3e chosen=%+d frozen=%+d %s\n", e.family.c_str(),
                            e.anchor.c_str(), e.residual_plus, e.residual_minus, e.chosen, e.frozen,
                            e.agrees() ? "agrees" : "DISAGREES");
                ok = ok && e.agrees();
            }
            const std::string json = calibration_json(entries);
            if (cal_json == "-") {
                std::fputs(json.c_str(), stdout);
            } else if (!cal_json.empty()) {
                write_file(place(cal_json, out), json);
            }
            return ok ? 0 : kExitFail;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const RegistryError& e) {
        std::fprintf(stderr, "registry error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
