#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simbench/corpus.hpp"
#include "simbench/embedding.hpp"
#include "simbench/ksc.hpp"
#include "simbench/measures.hpp"
#include "simbench/metrics.hpp"

namespace simbench {

struct EmbeddingSpec {
    enum class Mode { builtin, precomputed };
    Mode mode = Mode::builtin;
    std::size_t dims = 64;            // builtin hash embedder width
    std::string a_path, b_path;       // precomputed embedding files
};

struct RobustnessSpec {
    bool enabled = true;
    std::size_t asymptote_size = 600;  // desk-scale stand-in for the 3000-sample estimate
    std::size_t asymptote_reps = 10;
    std::size_t repetitions = 10;
    std::vector<std::size_t> grid;     // empty: derived from asymptote_size
    std::size_t imbalance_total = 0;   // 0: derived from asymptote_size
};

struct TimingSpec {
    bool enabled = true;
    std::size_t ops = 100;
    std::size_t corpus_size = 100;  // fixed evaluation size
};

struct RunConfig {
    std::string a_path, b_path;
    std::string a_format, b_format;  // empty: guess from extension
    EmbeddingSpec embedding;
    std::size_t n = 100;
    std::size_t k = 7;
    std::size_t repetitions = 5;
    std::vector<std::string> metrics;  // empty: all eight
    MetricConfig metric_config;
    RobustnessSpec robustness;
    TimingSpec timing;
    std::string output_dir = "out";
    std::optional<std::uint64_t> seed;  // mandatory; never wall-clock seeded
    std::size_t workers = 0;            // 0: SIMBENCH_WORKERS env or hardware
};

// Throws config_error on structural problems (bad k/n, unknown metrics,
// missing seed).
void validate(const RunConfig& cfg);

struct MetricEvaluation {
    MeasureReport report;
    DistanceTable table;  // merged across repetitions (empty on error)
    std::vector<SweepPoint> size_sweep;
    std::vector<SweepPoint> imbalance_sweep;
};

struct EvaluationResult {
    RunConfig config;
    std::vector<MetricEvaluation> metrics;  // config order
    bool any_failed = false;
};

// Full pipeline: load sources, embed, build one KSC per repetition, compute
// distance tables for every requested metric, aggregate all measures.
// A failing metric is recorded in its report and never disturbs the others.
EvaluationResult run_evaluation(const RunConfig& cfg);

// As above but with sources already in memory (embeddings derived per cfg).
EvaluationResult run_evaluation(const RunConfig& cfg, const Corpus& a, const Corpus& b);

enum class ReportFormat { json, csv, plotdata };

// Writes report.json / report.csv / plotdata/*.tsv under dir with
// deterministic names and content (timing fields aside).
std::vector<std::string> emit_report(const EvaluationResult& result, ReportFormat format,
                                     const std::string& dir);

// Serialization used by both emit_report and the `report` subcommand.
std::string report_to_json(const EvaluationResult& result);
EvaluationResult report_from_json(const std::string& json_text);

// Type-token ratio: distinct tokens over total tokens.
double ttr(const Corpus& corpus);

// Mean metric distance between disjoint random sub-corpora of A.
double self_distance(const Corpus& a, const EmbeddedCorpus& ea, MetricId metric,
                     const MetricConfig& cfg, std::size_t sub_size, std::size_t reps,
                     std::uint64_t seed);

struct TrendReport {
    std::string metric;
    std::size_t step_count = 0;
    std::vector<double> distances;   // d(reference, step_i), step order
    std::vector<double> step_ttr;    // per-step type-token ratios
    double reference_ttr = 0.0;
    double baseline_self_distance = 0.0;
    double slope = 0.0;              // OLS of distance on step index
    double spearman_rho = 0.0;
    std::size_t compared_size = 0;   // common subsample size
};

// Distance from the reference to each step corpus (all subsampled to the
// smallest size), with trend statistics and a self-distance baseline.
TrendReport ifc_trend(const Corpus& reference, const std::vector<Corpus>& steps,
                      MetricId metric, const MetricConfig& cfg,
                      const EmbeddingSpec& embedding, std::uint64_t seed);

std::string trend_to_json(const TrendReport& report);

}  // namespace simbench
