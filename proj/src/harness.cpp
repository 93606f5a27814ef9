#include "simbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "simbench/config.hpp"
#include "simbench/error.hpp"
#include "simbench/rng.hpp"
#include "simbench/stats.hpp"

namespace simbench {
namespace {

using nlohmann::json;

std::vector<MetricId> resolve_metrics(const RunConfig& cfg) {
    std::vector<MetricId> ids;
    if (cfg.metrics.empty()) {
        ids.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
    } else {
        for (const auto& name : cfg.metrics) ids.push_back(metric_from_string(name));
    }
    return ids;
}

std::size_t resolve_workers(const RunConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("SIMBENCH_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs jobs on a fixed pool; jobs must capture their own error handling.
void run_jobs(std::size_t workers, const std::vector<std::function<void()>>& jobs) {
    workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
    if (workers <= 1) {
        for (const auto& job : jobs) job();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= jobs.size()) return;
                jobs[idx]();
            }
        });
    }
    for (auto& t : pool) t.join();
}

struct PreparedSources {
    const Corpus* a = nullptr;
    const Corpus* b = nullptr;
    EmbeddedCorpus ea, eb;
    bool embedded = false;
};

PreparedSources prepare_sources(const RunConfig& cfg, const Corpus& a, const Corpus& b,
                                bool need_embeddings, std::uint64_t seed) {
    PreparedSources src;
    src.a = &a;
    src.b = &b;
    if (!need_embeddings) return src;
    if (cfg.embedding.mode == EmbeddingSpec::Mode::builtin) {
        src.ea = hash_embed(a, cfg.embedding.dims, derive_seed(seed, "embed", 0));
        src.eb = hash_embed(b, cfg.embedding.dims, derive_seed(seed, "embed", 1));
    } else {
        src.ea = load_embeddings(cfg.embedding.a_path);
        src.eb = load_embeddings(cfg.embedding.b_path);
        if (src.ea.rows != a.size() || src.eb.rows != b.size())
            throw data_error("precomputed embeddings do not match corpus sizes");
        if (src.ea.dim != src.eb.dim)
            throw data_error("precomputed embeddings have mismatched dimensions");
    }
    src.embedded = true;
    return src;
}

// Distance of one metric on subsamples of the sources at explicit sizes.
SizedDistanceFn make_sized_distance(MetricId id, const PreparedSources& src,
                                    const MetricConfig& base_cfg) {
    const bool needs_emb = metric_needs_embeddings(id);
    return [id, &src, base_cfg, needs_emb](std::size_t sa, std::size_t sb,
                                           std::uint64_t seed) {
        if (sa > src.a->size() || sb > src.b->size())
            throw data_error("subsample larger than source (need " + std::to_string(sa) +
                             "/" + std::to_string(sb) + " from " +
                             std::to_string(src.a->size()) + "/" +
                             std::to_string(src.b->size()) + ")");
        Rng rng(derive_seed(seed, "sized-draw"));
        auto ia = sample_without_replacement(src.a->size(), sa, rng);
        auto ib = sample_without_replacement(src.b->size(), sb, rng);
        Corpus ca, cb;
        EmbeddedCorpus ea, eb;
        if (needs_emb) {
            ea = src.ea.subset(ia, "a_s");
            eb = src.eb.subset(ib, "b_s");
        } else {
            ca = src.a->subset(ia, "a_s");
            cb = src.b->subset(ib, "b_s");
        }
        MetricConfig mc = base_cfg;
        mc.seed = derive_seed(seed, "sized-metric");
        return metric_distance(id, ca, ea, cb, eb, mc);
    };
}

std::optional<double> opt_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

void put_opt(json& j, const char* key, const std::optional<double>& v) {
    if (v)
        j[key] = *v;
    else
        j[key] = nullptr;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw data_error("cannot write " + path);
    out << text;
    if (!out) throw data_error("short write to " + path);
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (!cfg.seed) throw config_error("a seed is required (no wall-clock seeding)");
    if (cfg.k < 3) throw config_error("k must be >= 3");
    if (cfg.n < cfg.k - 1) throw config_error("n must be >= k-1");
    if (cfg.repetitions < 1) throw config_error("repetitions must be >= 1");
    if (cfg.embedding.mode == EmbeddingSpec::Mode::builtin && cfg.embedding.dims < 2)
        throw config_error("builtin embedding dims must be >= 2");
    if (cfg.embedding.mode == EmbeddingSpec::Mode::precomputed &&
        (cfg.embedding.a_path.empty() || cfg.embedding.b_path.empty()))
        throw config_error("precomputed embedding mode needs both file paths");
    resolve_metrics(cfg);  // throws on unknown names
}

EvaluationResult run_evaluation(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.a_path.empty() || cfg.b_path.empty())
        throw config_error("source corpus paths are required");
    Corpus a = load_corpus(cfg.a_path, cfg.a_format.empty()
                                           ? guess_corpus_format(cfg.a_path)
                                           : corpus_format_from_string(cfg.a_format));
    Corpus b = load_corpus(cfg.b_path, cfg.b_format.empty()
                                           ? guess_corpus_format(cfg.b_path)
                                           : corpus_format_from_string(cfg.b_format));
    return run_evaluation(cfg, a, b);
}

EvaluationResult run_evaluation(const RunConfig& cfg, const Corpus& a, const Corpus& b) {
    validate(cfg);
    const std::uint64_t seed = *cfg.seed;
    const auto ids = resolve_metrics(cfg);
    const std::size_t workers = resolve_workers(cfg);

    bool need_emb = false;
    for (MetricId id : ids) need_emb = need_emb || metric_needs_embeddings(id);
    PreparedSources src = prepare_sources(cfg, a, b, need_emb, seed);
    SourcePair pair{src.a, src.b, src.embedded ? &src.ea : nullptr,
                    src.embedded ? &src.eb : nullptr};

    // One KSC per repetition, shared by all metrics.
    std::vector<KscCollection> kscs;
    kscs.reserve(cfg.repetitions);
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
        kscs.push_back(build_ksc(a.size(), b.size(), cfg.n, cfg.k,
                                 derive_seed(seed, "ksc-rep", rep), a.id, b.id));

    const std::size_t n_metrics = ids.size();
    std::vector<std::vector<DistanceTable>> tables(n_metrics);
    for (auto& t : tables) t.resize(cfg.repetitions);
    std::vector<std::string> table_errors(n_metrics);
    std::mutex error_mutex;

    // Phase 1: distance tables, one job per (metric, repetition).
    std::vector<std::function<void()>> jobs;
    for (std::size_t m = 0; m < n_metrics; ++m) {
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            jobs.push_back([&, m, rep] {
                MetricId id = ids[m];
                std::size_t pair_index = 0;
                auto metric_fn = [&, m, rep](const Corpus& cp, const EmbeddedCorpus& ep,
                                             const Corpus& cq, const EmbeddedCorpus& eq) {
                    MetricConfig mc = cfg.metric_config;
                    mc.seed = derive_seed(seed, "metric-job",
                                          (static_cast<std::uint64_t>(m) << 40) ^
                                              (static_cast<std::uint64_t>(rep) << 20) ^
                                              pair_index++);
                    return metric_distance(id, cp, ep, cq, eq, mc);
                };
                try {
                    tables[m][rep] = compute_distances(kscs[rep], pair, metric_name(id),
                                                       metric_fn,
                                                       metric_needs_embeddings(id));
                } catch (const std::exception& ex) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (table_errors[m].empty()) table_errors[m] = ex.what();
                }
            });
        }
    }
    run_jobs(workers, jobs);

    // Phase 2: robustness sweeps, one job per (metric, sweep kind).
    RobustnessSpec rs = cfg.robustness;
    if (rs.grid.empty()) rs.grid = default_robustness_grid(rs.asymptote_size);
    if (rs.imbalance_total == 0)
        rs.imbalance_total = default_imbalance_total(rs.asymptote_size);
    std::vector<RobustnessRun> size_runs(n_metrics), imb_runs(n_metrics);
    std::vector<std::string> size_errors(n_metrics), imb_errors(n_metrics);
    if (rs.enabled) {
        std::vector<std::function<void()>> sweep_jobs;
        for (std::size_t m = 0; m < n_metrics; ++m) {
            sweep_jobs.push_back([&, m] {
                RobustnessOptions opt;
                opt.grid = rs.grid;
                opt.repetitions = rs.repetitions;
                opt.asymptote_size = rs.asymptote_size;
                opt.asymptote_reps = rs.asymptote_reps;
                opt.seed = derive_seed(seed, "size-robustness", m);
                try {
                    size_runs[m] = size_robustness_run(
                        make_sized_distance(ids[m], src, cfg.metric_config), opt);
                } catch (const std::exception& ex) {
                    size_errors[m] = ex.what();
                }
            });
            sweep_jobs.push_back([&, m] {
                RobustnessOptions opt;
                opt.grid = rs.grid;
                opt.repetitions = rs.repetitions;
                opt.asymptote_size = rs.asymptote_size;
                opt.asymptote_reps = rs.asymptote_reps;
                opt.seed = derive_seed(seed, "imbalance-robustness", m);
                try {
                    imb_runs[m] = imbalance_robustness_run(
                        make_sized_distance(ids[m], src, cfg.metric_config),
                        rs.imbalance_total, opt);
                } catch (const std::exception& ex) {
                    imb_errors[m] = ex.what();
                }
            });
        }
        run_jobs(workers, sweep_jobs);
    }

    // Phase 3: timing, strictly serial so runs do not contend.
    std::vector<std::optional<double>> time_t(n_metrics);
    std::vector<std::string> time_errors(n_metrics);
    if (cfg.timing.enabled) {
        for (std::size_t m = 0; m < n_metrics; ++m) {
            try {
                const MetricId id = ids[m];
                const std::size_t sz = cfg.timing.corpus_size;
                if (sz > a.size() || sz > b.size())
                    throw data_error("timing corpus size exceeds the sources");
                // Fixed evaluation corpora, prepared outside the timed region
                // (embedding and subsetting are not part of the measurement).
                Rng rng(derive_seed(seed, "timing-draw", m));
                auto ia = sample_without_replacement(a.size(), sz, rng);
                auto ib = sample_without_replacement(b.size(), sz, rng);
                Corpus ca, cb;
                EmbeddedCorpus ea_s, eb_s;
                if (metric_needs_embeddings(id)) {
                    ea_s = src.ea.subset(ia, "timing_a");
                    eb_s = src.eb.subset(ib, "timing_b");
                } else {
                    ca = a.subset(ia, "timing_a");
                    cb = b.subset(ib, "timing_b");
                }
                MetricConfig mc = cfg.metric_config;
                mc.seed = derive_seed(seed, "timing-metric", m);
                auto once = [&] { (void)metric_distance(id, ca, ea_s, cb, eb_s, mc); };
                time_t[m] = time_efficiency(once, cfg.timing.ops).t_per_100ops;
            } catch (const std::exception& ex) {
                time_errors[m] = ex.what();
            }
        }
    }

    // Assemble reports.
    EvaluationResult result;
    result.config = cfg;
    const std::string config_snapshot = run_config_to_json(cfg).dump();
    JudgementSet js = judgement_set(cfg.k);

    for (std::size_t m = 0; m < n_metrics; ++m) {
        MetricEvaluation ev;
        ev.report.metric = metric_name(ids[m]);
        ev.report.repetitions = cfg.repetitions;
        ev.report.config_snapshot = config_snapshot;

        std::string error = table_errors[m];
        if (error.empty()) {
            ev.table = merge_tables(tables[m]);
            try {
                ev.report.accuracy = accuracy(ev.table, js);
                ev.report.weighted_accuracy = weighted_accuracy(ev.table, js);
                ev.report.monotonicity = monotonicity(ev.table);
                ev.report.separability = separability(ev.table);
                ev.report.linearity = linearity(ev.table);
            } catch (const std::exception& ex) {
                error = ex.what();
            }
        }
        if (rs.enabled) {
            if (size_errors[m].empty()) {
                ev.report.size_robustness = size_runs[m].score;
                ev.size_sweep = size_runs[m].points;
            } else if (error.empty()) {
                error = "size robustness: " + size_errors[m];
            }
            if (imb_errors[m].empty()) {
                ev.report.imbalance_robustness = imb_runs[m].score;
                ev.imbalance_sweep = imb_runs[m].points;
            } else if (error.empty()) {
                error = "imbalance robustness: " + imb_errors[m];
            }
        }
        if (cfg.timing.enabled) {
            if (time_errors[m].empty()) {
                ev.report.time_t = time_t[m];
            } else if (error.empty()) {
                error = "timing: " + time_errors[m];
            }
        }
        ev.report.error = error;
        if (!error.empty()) result.any_failed = true;
        result.metrics.push_back(std::move(ev));
    }
    return result;
}

std::string report_to_json(const EvaluationResult& result) {
    json doc;
    doc["schema"] = "simbench-report-v1";
    doc["config"] = run_config_to_json(result.config);
    doc["any_failed"] = result.any_failed;
    json metrics = json::array();
    for (const auto& ev : result.metrics) {
        json m;
        m["metric"] = ev.report.metric;
        m["repetitions"] = ev.report.repetitions;
        m["error"] = ev.report.error;
        json measures;
        put_opt(measures, "accuracy", ev.report.accuracy);
        put_opt(measures, "weighted_accuracy", ev.report.weighted_accuracy);
        put_opt(measures, "time_t_per100", ev.report.time_t);
        put_opt(measures, "monotonicity", ev.report.monotonicity);
        put_opt(measures, "separability", ev.report.separability);
        put_opt(measures, "linearity", ev.report.linearity);
        put_opt(measures, "size_robustness", ev.report.size_robustness);
        put_opt(measures, "imbalance_robustness", ev.report.imbalance_robustness);
        m["measures"] = measures;
        json table = json::array();
        for (const auto& e : ev.table.entries)
            table.push_back({e.repetition, e.i, e.j, e.level, e.raw, e.z});
        m["table"] = table;
        json size_sweep = json::array();
        for (const auto& p : ev.size_sweep) size_sweep.push_back({p.size, p.distance});
        m["size_sweep"] = size_sweep;
        json imb_sweep = json::array();
        for (const auto& p : ev.imbalance_sweep) imb_sweep.push_back({p.size, p.distance});
        m["imbalance_sweep"] = imb_sweep;
        metrics.push_back(std::move(m));
    }
    doc["metrics"] = std::move(metrics);
    return doc.dump(2) + "\n";
}

EvaluationResult report_from_json(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("metrics"))
        throw data_error("not a valid report document");
    EvaluationResult result;
    if (doc.contains("config")) result.config = run_config_from_json(doc.at("config"));
    result.any_failed = doc.value("any_failed", false);
    for (const auto& m : doc.at("metrics")) {
        MetricEvaluation ev;
        ev.report.metric = m.at("metric").get<std::string>();
        ev.report.repetitions = m.value("repetitions", std::size_t{0});
        ev.report.error = m.value("error", std::string());
        const json& measures = m.at("measures");
        ev.report.accuracy = opt_from_json(measures, "accuracy");
        ev.report.weighted_accuracy = opt_from_json(measures, "weighted_accuracy");
        ev.report.time_t = opt_from_json(measures, "time_t_per100");
        ev.report.monotonicity = opt_from_json(measures, "monotonicity");
        ev.report.separability = opt_from_json(measures, "separability");
        ev.report.linearity = opt_from_json(measures, "linearity");
        ev.report.size_robustness = opt_from_json(measures, "size_robustness");
        ev.report.imbalance_robustness = opt_from_json(measures, "imbalance_robustness");
        ev.table.metric = ev.report.metric;
        ev.table.repetitions = ev.report.repetitions;
        for (const auto& row : m.value("table", json::array())) {
            DistanceEntry e;
            e.repetition = row.at(0).get<std::size_t>();
            e.i = row.at(1).get<std::size_t>();
            e.j = row.at(2).get<std::size_t>();
            e.level = row.at(3).get<std::size_t>();
            e.raw = row.at(4).get<double>();
            e.z = row.at(5).get<double>();
            ev.table.entries.push_back(e);
            ev.table.k = std::max(ev.table.k, e.j);
        }
        for (const auto& row : m.value("size_sweep", json::array()))
            ev.size_sweep.push_back({row.at(0).get<std::size_t>(), row.at(1).get<double>()});
        for (const auto& row : m.value("imbalance_sweep", json::array()))
            ev.imbalance_sweep.push_back(
                {row.at(0).get<std::size_t>(), row.at(1).get<double>()});
        result.metrics.push_back(std::move(ev));
    }
    return result;
}

std::vector<std::string> emit_report(const EvaluationResult& result, ReportFormat format,
                                     const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;

    if (format == ReportFormat::json) {
        std::string path = (fs::path(dir) / "report.json").string();
        write_text(path, report_to_json(result));
        written.push_back(path);
    } else if (format == ReportFormat::csv) {
        std::string csv = "metric,A,A_w,T,rho,omega2,R2,S,I\n";
        for (const auto& ev : result.metrics) {
            const MeasureReport& r = ev.report;
            auto cell = [](const std::optional<double>& v) {
                return v ? fmt_double(*v) : std::string();
            };
            csv += r.metric + "," + cell(r.accuracy) + "," + cell(r.weighted_accuracy) +
                   "," + cell(r.time_t) + "," + cell(r.monotonicity) + "," +
                   cell(r.separability) + "," + cell(r.linearity) + "," +
                   cell(r.size_robustness) + "," + cell(r.imbalance_robustness) + "\n";
        }
        std::string path = (fs::path(dir) / "report.csv").string();
        write_text(path, csv);
        written.push_back(path);
    } else {
        fs::path plot_dir = fs::path(dir) / "plotdata";
        fs::create_directories(plot_dir);
        for (const auto& ev : result.metrics) {
            if (!ev.table.entries.empty()) {
                std::string tsv = "level\traw\tz\n";
                for (const auto& e : ev.table.entries)
                    tsv += std::to_string(e.level) + "\t" + fmt_double(e.raw) + "\t" +
                           fmt_double(e.z) + "\n";
                std::string path = (plot_dir / ("scatter_" + ev.report.metric + ".tsv")).string();
                write_text(path, tsv);
                written.push_back(path);
            }
            auto write_sweep = [&](const std::vector<SweepPoint>& points,
                                   const std::string& stem) {
                if (points.empty()) return;
                std::string tsv = "size\tdistance\n";
                for (const auto& p : points)
                    tsv += std::to_string(p.size) + "\t" + fmt_double(p.distance) + "\n";
                std::string path = (plot_dir / (stem + "_" + ev.report.metric + ".tsv")).string();
                write_text(path, tsv);
                written.push_back(path);
            };
            write_sweep(ev.size_sweep, "size");
            write_sweep(ev.imbalance_sweep, "imbalance");
        }
    }
    return written;
}

double ttr(const Corpus& corpus) {
    std::set<std::string> distinct;
    std::size_t total = 0;
    for (const auto& sent : corpus.tokens) {
        for (const auto& t : sent) {
            distinct.insert(t);
            ++total;
        }
    }
    if (total == 0) throw data_error("ttr: corpus has no tokens");
    return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

double self_distance(const Corpus& a, const EmbeddedCorpus& ea, MetricId metric,
                     const MetricConfig& cfg, std::size_t sub_size, std::size_t reps,
                     std::uint64_t seed) {
    if (reps < 1) throw config_error("self_distance needs reps >= 1");
    if (a.size() < 2 * sub_size)
        throw data_error("self_distance needs |A| >= 2*sub_size");
    const bool needs_emb = metric_needs_embeddings(metric);
    double total = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        Rng rng(derive_seed(seed, "self-distance", rep));
        auto idx = sample_without_replacement(a.size(), 2 * sub_size, rng);
        std::vector<std::size_t> left(idx.begin(), idx.begin() + sub_size);
        std::vector<std::size_t> right(idx.begin() + sub_size, idx.end());
        Corpus ca, cb;
        EmbeddedCorpus sea, seb;
        if (needs_emb) {
            sea = ea.subset(left, "r1");
            seb = ea.subset(right, "r2");
        } else {
            ca = a.subset(left, "r1");
            cb = a.subset(right, "r2");
        }
        MetricConfig mc = cfg;
        mc.seed = derive_seed(seed, "self-distance-metric", rep);
        total += metric_distance(metric, ca, sea, cb, seb, mc);
    }
    return total / static_cast<double>(reps);
}

TrendReport ifc_trend(const Corpus& reference, const std::vector<Corpus>& steps,
                      MetricId metric, const MetricConfig& cfg,
                      const EmbeddingSpec& embedding, std::uint64_t seed) {
    if (steps.size() < 3) throw config_error("ifc_trend needs >= 3 step corpora");
    if (embedding.mode != EmbeddingSpec::Mode::builtin)
        throw config_error("ifc_trend supports the builtin embedder only");

    std::size_t min_size = reference.size();
    for (const auto& s : steps) min_size = std::min(min_size, s.size());
    if (min_size < 2) throw data_error("ifc_trend: corpora too small");

    const bool needs_emb = metric_needs_embeddings(metric);
    auto subsample = [&](const Corpus& c, std::uint64_t draw_seed) {
        Rng rng(draw_seed);
        auto idx = sample_without_replacement(c.size(), min_size, rng);
        return c.subset(idx, c.id + "_sub");
    };

    Corpus ref_sub = subsample(reference, derive_seed(seed, "ifc-draw", 0));
    EmbeddedCorpus ref_emb;
    if (needs_emb)
        ref_emb = hash_embed(ref_sub, embedding.dims, derive_seed(seed, "ifc-embed", 0));

    TrendReport report;
    report.metric = metric_name(metric);
    report.step_count = steps.size();
    report.compared_size = min_size;
    report.reference_ttr = ttr(reference);

    std::vector<double> xs;
    for (std::size_t si = 0; si < steps.size(); ++si) {
        Corpus step_sub = subsample(steps[si], derive_seed(seed, "ifc-draw", si + 1));
        EmbeddedCorpus step_emb;
        if (needs_emb)
            step_emb =
                hash_embed(step_sub, embedding.dims, derive_seed(seed, "ifc-embed", si + 1));
        MetricConfig mc = cfg;
        mc.seed = derive_seed(seed, "ifc-metric", si);
        report.distances.push_back(
            metric_distance(metric, ref_sub, ref_emb, step_sub, step_emb, mc));
        report.step_ttr.push_back(ttr(steps[si]));
        xs.push_back(static_cast<double>(si + 1));
    }

    report.slope = stats::ols_fit(xs, report.distances).slope;
    report.spearman_rho = stats::spearman(xs, report.distances);

    // Self-distance baseline from disjoint reference halves.
    std::size_t sub_size = std::min(min_size, reference.size() / 2);
    if (sub_size >= 2) {
        EmbeddedCorpus full_emb;
        if (needs_emb)
            full_emb =
                hash_embed(reference, embedding.dims, derive_seed(seed, "ifc-embed-full", 0));
        report.baseline_self_distance = self_distance(
            reference, full_emb, metric, cfg, sub_size, 5, derive_seed(seed, "ifc-self", 0));
    }
    return report;
}

std::string trend_to_json(const TrendReport& report) {
    json doc;
    doc["metric"] = report.metric;
    doc["step_count"] = report.step_count;
    doc["compared_size"] = report.compared_size;
    doc["distances"] = report.distances;
    doc["step_ttr"] = report.step_ttr;
    doc["reference_ttr"] = report.reference_ttr;
    doc["baseline_self_distance"] = report.baseline_self_distance;
    doc["slope"] = report.slope;
    doc["spearman_rho"] = report.spearman_rho;
    return doc.dump(2) + "\n";
}

}  // namespace simbench
