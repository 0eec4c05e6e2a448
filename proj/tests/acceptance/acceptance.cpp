// One PASS/FAIL line per acceptance criterion. Tolerances and levels are pinned here, independent of the
// default instances in the check registry.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gblab/verify/verify.hpp"

using namespace gblab;
using namespace gblab::verify;

namespace {

constexpr auto A = TolKind::absolute;
constexpr auto R = TolKind::relative;

struct Sub {
    CheckInstance inst;
    double max_seconds = 0.0;  // 0: no time limit
};

struct Criterion {
    int number;
    std::string title;
    std::vector<Sub> subs;
    std::function<bool(std::string&)> custom;
};

CheckInstance I(const char* id, const char* q, const char* geom, ParamMap p, double tol, TolKind kind, int level) {
    return CheckInstance{id, q, geom, std::move(p), tol, kind, level};
}

std::string brief(const CheckResult& r, double secs) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s/%s %s: value=%.10g ref=%.10g residual=%.2e tol=%.2e %.2fs%s", r.id.c_str(),
                  r.quantity.c_str(), r.geometry.c_str(), r.value, r.reference,
                  r.tol_kind == TolKind::absolute ? r.abs_residual : r.rel_residual, r.tolerance, secs, r.pass ? "" : " FAIL");
    return buf;
}

}  // namespace

int main() {
    std::vector<Criterion> cs;
    cs.push_back({1, "closed Gauss-Bonnet on S^2 and S^4",
                  {{I("ClosedGB", "chi", "sphere", {{"n", "2"}, {"rho", "1"}}, 1e-6, A, 2), 1.0},
                   {I("ClosedGB", "chi", "sphere", {{"n", "4"}, {"rho", "1"}}, 1e-3, R, 1), 60.0}},
                  {}});
    cs.push_back({2, "flat torus Pfaffian integrals vanish",
                  {{I("ClosedGB", "pf_integral", "flat_torus", {{"n", "2"}}, 1e-12, A, 2)},
                   {I("ClosedGB", "pf_integral", "flat_torus", {{"n", "4"}}, 1e-12, A, 1)}},
                  {}});
    cs.push_back({3, "boundary Gauss-Bonnet on D^2 and D^4",
                  {{I("BoundaryGB", "chi", "disk", {{"k", "1"}}, 1e-6, A, 2)},
                   {I("BoundaryGB", "chi", "disk", {{"k", "2"}}, 1e-3, A, 1)},
                   {I("BoundaryGB", "boundary_integral", "disk", {{"k", "1"}}, 1e-6, A, 2)},
                   {I("BoundaryGB", "boundary_integral", "disk", {{"k", "2"}}, 1e-3, A, 1)}},
                  {}});
    cs.push_back({4, "odd Pfaffian magnitudes on S^1 and S^3",
                  {{I("OddPfaffian", "magnitude", "sphere", {{"n", "1"}}, 1e-8, A, 1)},
                   {I("OddPfaffian", "magnitude", "sphere", {{"n", "3"}}, 1e-4, R, 1)}},
                  {}});
    {
        Criterion c{5, "cone tip: closed form against r -> 0 extrapolation, 2D singular contribution", {}, {}};
        for (const char* link : {"S1", "S3"})
            for (const char* th : {"0.5", "1"})
                c.subs.push_back({I("ConeGB", "two_route", "geometric_cone", {{"link", link}, {"theta", th}}, 1e-3, R, 1)});
        for (const char* th : {"0.5", "1"})
            c.subs.push_back(
                {I("ConeGB", "singular_contribution", "geometric_cone", {{"link", "S1"}, {"theta", th}}, 1e-4, A, 1)});
        cs.push_back(c);
    }
    cs.push_back({6, "edge limits (odd and even base) and the edge identity on S^2 x D^2",
                  {{I("EdgeLimit", "limit", "edge_product", {{"base", "S1"}, {"fiber", "S2"}, {"twist", "0.3"}}, 1e-3, A, 1)},
                   {I("EdgeLimit", "limit", "edge_product", {{"base", "S2"}, {"fiber", "S1"}, {"warp", "0.5"}}, 1e-3, R, 1)},
                   {I("EdgeGB", "identity", "edge_product", {{"base", "S2"}, {"fiber", "S1"}}, 1e-3, A, 1)}},
                  {}});
    cs.push_back({7, "fibered ends: catenoid and even-base model",
                  {{I("FiberedGB", "total_curvature", "catenoid", {}, 1e-4, A, 4)},
                   {I("FiberedGB", "total", "catenoid", {}, 1e-3, A, 4)},
                   {I("FiberedGB", "end_limit", "fibered_product", {{"base", "S2"}, {"fiber", "S1"}}, 1e-3, A, 1)}},
                  {}});
    {
        Criterion c{8, "football orbifolds p = 2, 3, 5", {}, {}};
        for (const char* p : {"2", "3", "5"}) c.subs.push_back({I("OrbifoldGB", "chi", "football", {{"p", p}}, 1e-9, A, 3)});
        cs.push_back(c);
    }
    cs.push_back({9, "second-order perturbation stability and the phi-connection limit",
                  {{I("PerturbationStability", "limit_difference", "perturbed_cone", {{"link", "S1"}, {"a", "1"}, {"p", "2"}},
                      1e-3, A, 1)},
                   {I("PhiLimit", "max_entry_error", "perturbed_cone", {{"link", "S1"}}, 1e-4, A, 1)},
                   {I("PhiLimit", "max_entry_error", "geometric_cone", {{"link", "S1"}}, 1e-4, A, 1)}},
                  {}});
    cs.push_back({10, "first-order conical tip, a = 0.3",
                  {{I("FirstOrderConic", "chi_identity", "first_order_cone", {{"a", "0.3"}}, 1e-3, A, 3)}},
                  {}});
    cs.push_back({11, "d of the path transgression equals the Pfaffian difference on a 32^2 grid",
                  {{I("TransgressionStokes", "max_pointwise_error", "conformal_torus", {}, 1e-3, A, 1)}},
                  {}});
    cs.push_back({12, "algebra identities", {{I("AlgebraIdentities", "failures", "", {}, 0.0, A, 1)}}, {}});
    {
        Criterion c{13, "lens quotient cone tips", {}, {}};
        for (const char* o : {"2", "3", "4"})
            c.subs.push_back({I("LensObstruction", "weighted_tip", "lens_cone", {{"k", "2"}, {"order", o}}, 1e-4, R, 1)});
        cs.push_back(c);
    }
    cs.push_back({14, "suite JSON identical for 1 and 4 workers", {}, [](std::string& detail) {
                      RunOptions one, four;
                      four.workers = 4;
                      const SuiteResult a = run_suite("", one);
                      const SuiteResult b = run_suite("", four);
                      const bool same = to_json(a, one) == to_json(b, four);
                      detail = std::to_string(a.results.size()) + " results, " + (same ? "byte-identical" : "DIFFER");
                      return same && a.results.size() >= 15;
                  }});

    int failed = 0;
    for (const auto& c : cs) {
        bool ok = true;
        std::vector<std::string> lines;
        for (const auto& s : c.subs) {
            const auto t0 = std::chrono::steady_clock::now();
            CheckResult r;
            try {
                r = run_instance(s.inst);
            } catch (const std::exception& e) {
                lines.push_back(s.inst.id + ": " + e.what());
                ok = false;
                continue;
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const bool in_time = s.max_seconds <= 0.0 || secs < s.max_seconds;
            ok = ok && r.pass && in_time;
            lines.push_back(brief(r, secs) + (in_time ? "" : " (over time limit)"));
        }
        if (c.custom) {
            std::string detail;
            ok = c.custom(detail) && ok;
            lines.push_back(detail);
        }
        std::printf("%s %2d %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str());
        for (const auto& l : lines) std::printf("        %s\n", l.c_str());
        failed += !ok;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(cs.size()) - failed, cs.size());
    return failed == 0 ? 0 : 1;
}
