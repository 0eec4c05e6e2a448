#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gblab/catalog/catalog.hpp"
#include "gblab/quadrature/quadrature.hpp"

namespace gblab::verify {

enum class TolKind { absolute, relative };

const char* tol_kind_name(TolKind k);

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
};

struct CheckResult {
    std::string id;
    std::string quantity;
    std::string geometry;
    ParamMap params;
    int level = 0;
    long nodes = 0;
    double value = 0.0;
    double reference = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tolerance = 0.0;
    TolKind tol_kind = TolKind::absolute;
    bool pass = false;
    std::vector<Table> tables;
    std::vector<std::string> notes;
    std::vector<std::string> epsilon_notes;
    std::map<std::string, double> extras;
};

// One registered evaluation: a check applied to a geometry with a default level and tolerance.
struct CheckInstance {
    std::string id;
    std::string quantity;
    std::string geometry;
    ParamMap params;
    double tolerance = 0.0;
    TolKind tol_kind = TolKind::absolute;
    int level = 1;
};

struct CheckInfo {
    std::string id;
    std::string summary;
    std::vector<std::string> geometries;  // compatible catalog builtins
    std::vector<std::string> quantities;
    std::vector<CheckInstance> instances;
};

struct RunOptions {
    int level = 0;                 // 0: per-instance default
    std::optional<double> tol;     // overrides the instance tolerance
    int workers = 1;
    std::optional<int> epsilon;    // overrides the frozen slice orientation of every stratum
};

const std::vector<CheckInfo>& check_list();
const CheckInfo& check_info(const std::string& id);

// Deterministic for fixed inputs; numerical failures produce a failed result, never an exception.
CheckResult run_instance(const CheckInstance& inst, const RunOptions& opt = {});

// Runs `id` on a catalog geometry; an empty geometry selects the registered instances. Geometries whose builtin
// is not compatible with the check raise ConfigError.
std::vector<CheckResult> run_check(const std::string& id, const std::string& geometry = "", const ParamMap& params = {},
                                   const RunOptions& opt = {});

struct SuiteResult {
    std::string filter;
    std::vector<CheckResult> results;
    int passed = 0;
    int failed = 0;
    bool all_passed() const { return failed == 0; }
};

// Case-insensitive substring filter on the check id; results ordered by registration.
SuiteResult run_suite(const std::string& filter = "", const RunOptions& opt = {});

// Values of one instance at levels 1..levels.
ConvergenceTable converge(const CheckInstance& inst, int levels, const RunOptions& opt = {});

struct CalibrationEntry {
    std::string family;
    std::string anchor;
    double residual_plus = 0.0;
    double residual_minus = 0.0;
    int chosen = 0;
    int frozen = 0;
    bool agrees() const { return chosen == frozen; }
};

std::vector<CalibrationEntry> calibrate(const RunOptions& opt = {});

std::string sign_ledger_note();
std::map<std::string, int> frozen_epsilons();

// Suite report; `csv_refs` maps result index to the CSV file name written alongside, if any.
std::string to_json(const SuiteResult& suite, const RunOptions& opt, const std::map<std::size_t, std::string>& csv_refs = {});
std::string calibration_json(const std::vector<CalibrationEntry>& entries);

}  // namespace gblab::verify
