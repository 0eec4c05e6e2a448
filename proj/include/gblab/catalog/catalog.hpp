#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gblab/geometry/collar.hpp"
#include "gblab/geometry/metric.hpp"

namespace gblab {

// Frozen slice orientation flags, one per theorem family.
inline constexpr int kEpsilonBoundary = 1;
inline constexpr int kEpsilonEdge = -1;
inline constexpr int kEpsilonFibered = -1;

enum class StratumKind {
    boundary,     // smooth boundary at a finite r; slices evaluated there
    cone_tip,     // r -> 0 limit
    edge,         // r -> 0 limit
    fibered_end,  // r -> infinity limit, extrapolated in u = 1/r
};

const char* stratum_kind_name(StratumKind k);

struct Stratum {
    std::string name;
    StratumKind kind = StratumKind::boundary;
    CollarMetric collar;
    double r_at = 0.0;  // location of the stratum (ignored for fibered ends)
    double r0 = 0.4;    // first sample of the limit schedule (in u for fibered ends)
};

struct ParamSpec {
    enum class Kind { real, integer, choice };
    std::string name;
    Kind kind = Kind::real;
    std::string default_value;
    double min = 0.0;
    double max = 0.0;
    std::vector<std::string> choices;
    std::string doc;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
};

struct SymmetryWeight {
    int num = 1;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
};

struct GeometrySpec {
    std::string name;
    std::string builtin;
    std::map<std::string, std::string> params;
    int dim = 0;
    std::vector<MetricField> charts;  // interior pieces, overlap-free up to measure zero
    std::vector<Stratum> strata;
    std::optional<FibrationData> fibration;
    std::optional<MetricField> partner;  // second metric of a pair on the same chart
    MetricFn horizontal_variation;       // d_r g^B at the stratum, when present
    SymmetryWeight symmetry_weight;
    double chi_ref = 0.0;
    std::map<std::string, double> chi_pieces;
    std::map<std::string, double> data;

    double param(const std::string& key) const;
    const std::string& choice(const std::string& key) const;
};

using ParamMap = std::map<std::string, std::string>;

const std::vector<CatalogEntry>& catalog_list();
const CatalogEntry& catalog_entry(const std::string& name);

// Builtins and registered custom geometries; unknown names and invalid parameters raise RegistryError.
GeometrySpec catalog_get(const std::string& name, const ParamMap& params = {});

// Key-value geometry definition:
//   schema = 1
//   name = <new name>
//   builtin = <catalog entry>
//   <param> = <value>
//   chart.lower = v1,v2,...   (optional, replaces the bounds of the first interior chart)
//   chart.upper = v1,v2,...
// Lines starting with '#' are comments. Raises ConfigError on malformed input.
struct CustomGeometry {
    std::string name;
    std::string builtin;
    ParamMap params;
    std::vector<double> lower;
    std::vector<double> upper;
};

CustomGeometry parse_geometry_config(const std::string& text);
CustomGeometry load_geometry_config(const std::string& path);
void register_geometry(const CustomGeometry& g);
void clear_registered_geometries();
std::vector<std::string> registered_geometries();

}  // namespace gblab
