#include "gblab/verify/verify.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "checks.hpp"
#include "gblab/errors.hpp"
#include "json.hpp"

namespace gblab::verify {

namespace {

using ojson = nlohmann::ordered_json;

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool compatible(const CheckInfo& info, const std::string& builtin) {
    return std::find(info.geometries.begin(), info.geometries.end(), builtin) != info.geometries.end();
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

const char* tol_kind_name(TolKind k) { return k == TolKind::absolute ? "absolute" : "relative"; }

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + number(row[i]);
        out += "\n";
    }
    return out;
}

const std::vector<CheckInfo>& check_list() { return detail::check_infos(); }

const CheckInfo& check_info(const std::string& id) {
    for (const auto& c : check_list())
        if (c.id == id) return c;
    throw RegistryError("unknown check '" + id + "'");
}

CheckResult run_instance(const CheckInstance& inst, const RunOptions& opt) {
    const CheckInfo& info = check_info(inst.id);
    if (opt.workers < 1) throw ConfigError("worker count must be at least 1");
    if (opt.level < 0 || opt.level > 7) throw ConfigError("level must lie in 1..7");
    if (inst.geometry.empty()) {
        if (!info.geometries.empty()) throw ConfigError(inst.id + ": needs a geometry");
        return detail::execute(inst, nullptr, opt);
    }
    const GeometrySpec g = catalog_get(inst.geometry, inst.params);
    if (!compatible(info, g.builtin))
        throw ConfigError(inst.id + ": geometry '" + inst.geometry + "' (" + g.builtin + ") is not compatible");
    return detail::execute(inst, &g, opt);
}

std::vector<CheckResult> run_check(const std::string& id, const std::string& geometry, const ParamMap& params,
                                   const RunOptions& opt) {
    const CheckInfo& info = check_info(id);
    std::vector<CheckResult> out;
    if (geometry.empty()) {
        if (!params.empty()) throw ConfigError("geometry parameters given without a geometry");
        for (const auto& in : info.instances) out.push_back(run_instance(in, opt));
        return out;
    }
    if (info.geometries.empty()) throw ConfigError(id + ": takes no geometry");
    const GeometrySpec g = catalog_get(geometry, params);
    if (!compatible(info, g.builtin))
        throw ConfigError(id + ": geometry '" + geometry + "' (" + g.builtin + ") is not compatible");
    // instances on the same builtin whose parameters agree best with the request, one per quantity
    int best = -1;
    std::vector<CheckInstance> picks;
    for (const auto& in : info.instances) {
        if (in.geometry != g.builtin) continue;
        const ParamMap resolved = catalog_get(in.geometry, in.params).params;
        int score = 0;
        for (const auto& [k, v] : resolved) score += g.params.count(k) && g.params.at(k) == v;
        if (score > best) {
            best = score;
            picks.clear();
        }
        if (score == best &&
            std::none_of(picks.begin(), picks.end(), [&](const CheckInstance& p) { return p.quantity == in.quantity; }))
            picks.push_back(in);
    }
    if (picks.empty()) {
        picks.push_back(info.instances.front());
        picks.back().quantity = info.quantities.front();
    }
    for (CheckInstance in : picks) {
        in.geometry = geometry;
        in.params = params;
        out.push_back(run_instance(in, opt));
    }
    return out;
}

SuiteResult run_suite(const std::string& filter, const RunOptions& opt) {
    SuiteResult s;
    s.filter = filter;
    const std::string f = lower(filter);
    for (const auto& info : check_list()) {
        if (lower(info.id).find(f) == std::string::npos) continue;
        for (const auto& in : info.instances) {
            s.results.push_back(run_instance(in, opt));
            (s.results.back().pass ? s.passed : s.failed)++;
        }
    }
    return s;
}

ConvergenceTable converge(const CheckInstance& inst, int levels, const RunOptions& opt) {
    if (levels < 1 || levels > 7) throw ConfigError("levels must lie in 1..7");
    ConvergenceTable t;
    for (int l = 1; l <= levels; ++l) {
        RunOptions o = opt;
        o.level = l;
        const CheckResult r = run_instance(inst, o);
        t.append(l, static_cast<std::size_t>(r.nodes), r.value);
    }
    return t;
}

std::vector<CalibrationEntry> calibrate(const RunOptions& opt) {
    struct Anchor {
        const char* family;
        const char* label;
        CheckInstance inst;
        int frozen;
    };
    const std::vector<Anchor> anchors = {
        {"boundary", "BoundaryGB on the disk D^2",
         CheckInstance{"BoundaryGB", "chi", "disk", {{"k", "1"}}, 1e-6, TolKind::absolute, 2}, kEpsilonBoundary},
        {"edge", "EdgeGB on S^2 x D^2",
         CheckInstance{"EdgeGB", "identity", "edge_product", {{"base", "S2"}, {"fiber", "S1"}}, 1e-3, TolKind::absolute, 1},
         kEpsilonEdge},
        {"fibered", "FiberedGB on the catenoid",
         CheckInstance{"FiberedGB", "total", "catenoid", {}, 1e-3, TolKind::absolute, 4}, kEpsilonFibered},
    };
    std::vector<CalibrationEntry> out;
    for (const auto& a : anchors) {
        CalibrationEntry e;
        e.family = a.family;
        e.anchor = a.label;
        RunOptions o = opt;
        o.epsilon = 1;
        e.residual_plus = run_instance(a.inst, o).abs_residual;
        o.epsilon = -1;
        e.residual_minus = run_instance(a.inst, o).abs_residual;
        e.chosen = e.residual_plus <= e.residual_minus ? 1 : -1;
        e.frozen = a.frozen;
        out.push_back(e);
    }
    return out;
}

std::string sign_ledger_note() {
    return "sign ledger: the boundary correction uses the coefficient (-1)^j / (2^j (2j+1) j! (k-1-j)!); the alternative "
           "display (-1)^{k+j} (2k-2j-3)!! / (j! (2k-2j-1)!) differs by (-1)^{2j+1} and is not used";
}

std::map<std::string, int> frozen_epsilons() {
    return {{"boundary", kEpsilonBoundary}, {"edge", kEpsilonEdge}, {"fibered", kEpsilonFibered}};
}

std::string to_json(const SuiteResult& suite, const RunOptions& opt, const std::map<std::size_t, std::string>& csv_refs) {
    ojson meta;
    meta["tool"] = "gblab";
    meta["schema"] = 1;
    meta["filter"] = suite.filter;
    meta["level"] = opt.level > 0 ? ojson(opt.level) : ojson("default");
    meta["tolerance_override"] = opt.tol ? ojson(*opt.tol) : ojson(nullptr);
    ojson eps;
    for (const auto& [k, v] : frozen_epsilons()) eps[k] = v;
    meta["epsilon"] = eps;
    meta["epsilon_override"] = opt.epsilon ? ojson(*opt.epsilon) : ojson(nullptr);
    meta["sign_ledger"] = sign_ledger_note();
    meta["checks"] = suite.results.size();
    meta["passed"] = suite.passed;
    meta["failed"] = suite.failed;
    ojson checks = ojson::array();
    for (std::size_t i = 0; i < suite.results.size(); ++i) {
        const CheckResult& r = suite.results[i];
        ojson c;
        c["id"] = r.id;
        c["quantity"] = r.quantity;
        c["geometry"] = r.geometry;
        ojson p = ojson::object();
        for (const auto& [k, v] : r.params) p[k] = v;
        c["params"] = p;
        c["level"] = r.level;
        c["nodes"] = r.nodes;
        c["value"] = finite_or_null(r.value);
        c["reference"] = finite_or_null(r.reference);
        c["residual"] = finite_or_null(r.tol_kind == TolKind::absolute ? r.abs_residual : r.rel_residual);
        c["abs_residual"] = finite_or_null(r.abs_residual);
        c["rel_residual"] = finite_or_null(r.rel_residual);
        c["tolerance"] = r.tolerance;
        c["tolerance_kind"] = tol_kind_name(r.tol_kind);
        c["pass"] = r.pass;
        auto it = csv_refs.find(i);
        c["convergence_csv_ref"] = it == csv_refs.end() ? ojson(nullptr) : ojson(it->second);
        c["epsilon_notes"] = r.epsilon_notes;
        c["notes"] = r.notes;
        ojson x = ojson::object();
        for (const auto& [k, v] : r.extras) x[k] = finite_or_null(v);
        c["extras"] = x;
        checks.push_back(std::move(c));
    }
    ojson doc;
    doc["suite"] = meta;
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

std::string calibration_json(const std::vector<CalibrationEntry>& entries) {
    ojson arr = ojson::array();
    for (const auto& e : entries) {
        ojson o;
        o["family"] = e.family;
        o["anchor"] = e.anchor;
        o["residual_plus"] = finite_or_null(e.residual_plus);
        o["residual_minus"] = finite_or_null(e.residual_minus);
        o["chosen"] = e.chosen;
        o["frozen"] = e.frozen;
        o["agrees"] = e.agrees();
        arr.push_back(std::move(o));
    }
    ojson doc;
    doc["calibration"] = arr;
    return doc.dump(2) + "\n";
}

}  // namespace gblab::verify
