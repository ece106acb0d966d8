#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "votemap/approval.hpp"
#include "votemap/cultures.hpp"
#include "votemap/embedding.hpp"
#include "votemap/types.hpp"

// Text formats and experiment plumbing.  Everything here is string-in,
// string-out; file handling stays in the CLI.  Floats are always printed
// with 9 significant digits so reruns are byte-identical.

namespace votemap {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double x);

// Culture spec strings: a culture name, optionally followed by
// `:key=value,key=value`.  Examples: `ic`, `urn:alpha=0.1`,
// `norm-mallows:norm_phi=0.5`, `euclidean:space=disc`, `compass:point=id`,
// `resampling:p=0.5,phi=0.75`.
CultureSpec parse_culture(const std::string& text);
ApprovalCultureSpec parse_approval_culture(const std::string& text);

// Election text: one `a>b>c` ranking per line with an optional `count *`
// prefix; `#` starts a comment.  The writer adds a `# candidates: m`
// header so empty elections survive the round trip.
std::string write_election(const OrdinalElection& e);
OrdinalElection parse_election(const std::string& text);

// Approval text: one comma-separated ballot per line (possibly empty).
std::string write_approval_election(const ApprovalElection& e);
ApprovalElection parse_approval_election(const std::string& text);

// PrefLib soc/toc: candidate count, one `index,name` line per candidate, a
// `n,sum,unique` summary line, then `count,c1,c2,...` vote lines where a
// tie group is written `{c1,c2}`.  Rankings may be incomplete (toi-style
// prefixes are accepted).
struct RawPrefRecord {
    std::vector<std::vector<int>> groups;  // preference tiers, top first
    int multiplicity = 1;
};

struct PrefLibData {
    int num_candidates = 0;
    std::vector<std::string> names;
    std::vector<RawPrefRecord> records;
};

PrefLibData parse_preflib_soc(const std::string& text);
std::string write_preflib_soc(const PrefLibData& data);

// Turns raw records into complete strict orders: ties are broken uniformly,
// then every incomplete vote grows by drawing a uniform complete vote that
// extends its current prefix and copying that vote's next candidate (uniform
// over unranked candidates when no reference matches).
OrdinalElection complete_votes(const PrefLibData& data, Rng& rng);

// Keeps the t candidates with the highest Borda scores (ties to the lower
// index) and renumbers them 0..t-1 in their original relative order.
OrdinalElection restrict_top_candidates(const OrdinalElection& e, int t);

// Uniform sample of n_out votes, with replacement.
OrdinalElection sample_voters(const OrdinalElection& e, int n_out, Rng& rng);

// CSV: distance matrices are a header row of labels plus symmetric numeric
// rows; coordinates are `label,x,y`; the embedding quality report is
// `label,monotonicity,tmr`.
std::string write_distance_csv(const DistanceMatrix& dm);
DistanceMatrix parse_distance_csv(const std::string& text);

std::string write_coordinates_csv(const Embedding& embedding);

struct NamedPoints {
    std::vector<std::string> labels;
    std::vector<MapPoint> points;
};

NamedPoints parse_coordinates_csv(const std::string& text);

std::string write_quality_csv(const std::vector<std::string>& labels,
                              const std::vector<double>& monotonicity,
                              const std::vector<double>& tmr);

std::string write_similarity_csv(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& mean,
                                 const std::vector<std::vector<double>>& stddev);

std::string write_names_sidecar(const std::vector<std::string>& names);
std::vector<std::string> parse_names_sidecar(const std::string& text);

// Experiment configs are line oriented with two sections.  [experiment]
// holds defaults (seed, m, n, metric, embedding, output paths); each
// [elections] line reads `label = <culture> [count=..] [m=..] [n=..]
// [seed=..] [color=#rrggbb]`.
struct DatasetEntry {
    std::string label;
    std::string culture;
    int count = 1;
    int m = -1;  // -1 inherits the experiment default
    int n = -1;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string color;
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    int m = 10;
    int n = 50;
    int trials = 10;  // subelection similarity repetitions
    std::string metric = "emd-positionwise";
    std::string embedding = "kk";
    std::string distances_path;
    std::string coordinates_path;
    std::string svg_path;
    std::vector<DatasetEntry> entries;
};

ExperimentConfig parse_experiment_config(const std::string& text);

// One row per generated election: labels are expanded (`urn` with count 3
// becomes urn_0, urn_1, urn_2) and every row gets its own derived seed.
struct ResolvedElection {
    std::string label;
    std::string culture;
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::string color;
};

std::vector<ResolvedElection> resolve_dataset(const ExperimentConfig& config);

// SVG 1.1 map: circles at embedded positions, optional text labels, and an
// optional per-label feature colored by linear interpolation between
// low_color and high_color.
struct MapStyle {
    double width = 800;
    double height = 600;
    double margin = 50;
    double point_radius = 4;
    bool draw_labels = true;
    std::string default_color = "#4878cf";
    std::map<std::string, std::string> colors;   // per-label override
    std::map<std::string, double> feature;       // colormap input
    std::string low_color = "#2166ac";
    std::string high_color = "#b2182b";
};

std::string render_svg_map(const NamedPoints& points, const MapStyle& style = {});
std::string render_svg_map(const Embedding& embedding, const MapStyle& style = {});

}  // namespace votemap
