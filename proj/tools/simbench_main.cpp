#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "simbench/config.hpp"
#include "simbench/error.hpp"
#include "simbench/harness.hpp"
#include "simbench/rng.hpp"
#include "simbench/sdc_prob.hpp"

namespace {

using namespace simbench;
namespace fs = std::filesystem;

Corpus load_with_format(const std::string& path, const std::string& format) {
    return load_corpus(path, format.empty() ? guess_corpus_format(path)
                                            : corpus_format_from_string(format));
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw data_error("cannot write " + path);
    out << text;
}

std::string pmf_csv(const sdc::DiscretePmf& pmf) {
    const bool doubled = pmf.mode.find("2z") != std::string::npos;
    std::string csv = "z,probability\n";
    char buf[64];
    for (std::size_t idx = 0; idx < pmf.support.size(); ++idx) {
        double z = doubled ? static_cast<double>(pmf.support[idx]) / 2.0
                           : static_cast<double>(pmf.support[idx]);
        std::snprintf(buf, sizeof buf, "%.10g,%.17g\n", z, pmf.probs[idx]);
        csv += buf;
    }
    return csv;
}

void emit_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

struct CliOptions {
    // embed
    std::string embed_in, embed_format, embed_out;
    std::size_t embed_dims = 64;
    std::uint64_t embed_seed = 0;

    // ksc build
    std::string ksc_a, ksc_b, ksc_a_format, ksc_b_format, ksc_out;
    std::size_t ksc_n = 100, ksc_k = 7;
    std::uint64_t ksc_seed = 0;

    // evaluate
    std::string eval_config, eval_a, eval_b, eval_out;
    std::vector<std::string> eval_metrics;
    std::size_t eval_n = 0, eval_k = 0, eval_reps = 0, eval_dims = 0, eval_workers = 0;
    std::uint64_t eval_seed = 0;
    bool eval_no_robustness = false, eval_no_timing = false;

    // sdc
    std::size_t sdc_n = 10, sdc_i = 0, sdc_j = 0;
    std::string sdc_mode = "semantic", sdc_kind = "set", sdc_out;
    std::size_t sdc_trials = 200000;
    std::uint64_t sdc_seed = 0;

    // ifc
    std::string ifc_reference, ifc_metric = "FID", ifc_out;
    std::vector<std::string> ifc_steps;
    std::size_t ifc_dims = 64;
    std::uint64_t ifc_seed = 0;

    // report
    std::string report_from, report_format = "csv", report_out = ".";
};

int cmd_embed(const CliOptions& opt) {
    Corpus c = load_with_format(opt.embed_in, opt.embed_format);
    EmbeddedCorpus ec = hash_embed(c, opt.embed_dims, opt.embed_seed);
    if (opt.embed_out.size() > 4 &&
        opt.embed_out.compare(opt.embed_out.size() - 4, 4, ".csv") == 0)
        save_embeddings_csv(ec, opt.embed_out);
    else
        save_embeddings(ec, opt.embed_out);
    std::cout << "embedded " << ec.rows << " sentences into " << ec.dim
              << " dims -> " << opt.embed_out << "\n";
    return 0;
}

int cmd_ksc_build(const CliOptions& opt) {
    Corpus a = load_with_format(opt.ksc_a, opt.ksc_a_format);
    Corpus b = load_with_format(opt.ksc_b, opt.ksc_b_format);
    KscCollection ksc =
        build_ksc(a.size(), b.size(), opt.ksc_n, opt.ksc_k, opt.ksc_seed, a.id, b.id);
    fs::create_directories(opt.ksc_out);

    nlohmann::json manifest;
    manifest["k"] = ksc.k;
    manifest["n"] = ksc.n;
    manifest["seed"] = ksc.seed;
    manifest["source_a"] = opt.ksc_a;
    manifest["source_b"] = opt.ksc_b;
    nlohmann::json corpora = nlohmann::json::array();
    SourcePair src{&a, &b, nullptr, nullptr};
    for (std::size_t i = 1; i <= ksc.k; ++i) {
        Corpus ci = materialize_corpus(ksc, i, src);
        std::string name = "c" + std::to_string(i) + ".jsonl";
        std::string body;
        for (const auto& s : ci.sentences) {
            nlohmann::json rec{{"text", s}};
            body += rec.dump() + "\n";
        }
        write_file((fs::path(opt.ksc_out) / name).string(), body);
        nlohmann::json entry;
        entry["file"] = name;
        entry["a_count"] = ksc.a_count(i);
        nlohmann::json refs = nlohmann::json::array();
        for (const auto& ref : ksc.corpora[i - 1])
            refs.push_back({ref.source == Provenance::A ? "A" : "B", ref.index});
        entry["samples"] = refs;
        corpora.push_back(entry);
    }
    manifest["corpora"] = corpora;
    write_file((fs::path(opt.ksc_out) / "manifest.json").string(),
               manifest.dump(2) + "\n");
    std::cout << "built KSC k=" << ksc.k << " n=" << ksc.n << " -> " << opt.ksc_out
              << "\n";
    return 0;
}

int cmd_evaluate(const CliOptions& opt) {
    RunConfig cfg;
    if (!opt.eval_config.empty()) cfg = load_run_config(opt.eval_config);
    // CLI flags override file values.
    if (!opt.eval_a.empty()) cfg.a_path = opt.eval_a;
    if (!opt.eval_b.empty()) cfg.b_path = opt.eval_b;
    if (opt.eval_n) cfg.n = opt.eval_n;
    if (opt.eval_k) cfg.k = opt.eval_k;
    if (opt.eval_reps) cfg.repetitions = opt.eval_reps;
    if (opt.eval_dims) cfg.embedding.dims = opt.eval_dims;
    if (opt.eval_workers) cfg.workers = opt.eval_workers;
    if (!opt.eval_metrics.empty()) cfg.metrics = opt.eval_metrics;
    if (!opt.eval_out.empty()) cfg.output_dir = opt.eval_out;
    if (opt.eval_no_robustness) cfg.robustness.enabled = false;
    if (opt.eval_no_timing) cfg.timing.enabled = false;
    cfg.seed = opt.eval_seed;

    EvaluationResult result = run_evaluation(cfg);
    emit_report(result, ReportFormat::json, cfg.output_dir);
    emit_report(result, ReportFormat::csv, cfg.output_dir);
    emit_report(result, ReportFormat::plotdata, cfg.output_dir);

    for (const auto& ev : result.metrics) {
        const auto& r = ev.report;
        if (!r.error.empty()) {
            std::cout << r.metric << ": FAILED (" << r.error << ")\n";
        } else {
            std::cout << r.metric << ": A=" << (r.accuracy ? *r.accuracy : 0.0)
                      << " rho=" << (r.monotonicity ? *r.monotonicity : 0.0) << "\n";
        }
    }
    std::cout << "report written to " << cfg.output_dir << "\n";
    return result.any_failed ? 3 : 0;
}

int cmd_sdc_pmf(const CliOptions& opt) {
    const unsigned n = static_cast<unsigned>(opt.sdc_n);
    const unsigned i = static_cast<unsigned>(opt.sdc_i);
    const unsigned j = static_cast<unsigned>(opt.sdc_j);
    sdc::DiscretePmf pmf;
    if (opt.sdc_mode == "semantic")
        pmf = sdc::semantic_intersection_pmf(n, i, j);
    else if (opt.sdc_mode == "nonsemantic")
        pmf = sdc::nonsemantic_intersection_pmf(n, i, j);
    else if (opt.sdc_mode == "avd-semantic")
        pmf = sdc::nondistributional_semantic_pmf(n, i, j);
    else
        throw config_error("sdc pmf mode must be semantic|nonsemantic|avd-semantic");
    emit_or_print(opt.sdc_out, pmf_csv(pmf));
    return 0;
}

int cmd_sdc_expect(const CliOptions& opt) {
    const unsigned n = static_cast<unsigned>(opt.sdc_n);
    bool semantic;
    if (opt.sdc_mode == "semantic")
        semantic = true;
    else if (opt.sdc_mode == "nonsemantic")
        semantic = false;
    else
        throw config_error("sdc expect mode must be semantic|nonsemantic");
    std::string csv = "i\\j";
    for (unsigned j = 0; j <= n; ++j) csv += "," + std::to_string(j);
    csv += "\n";
    char buf[48];
    for (unsigned i = 0; i <= n; ++i) {
        csv += std::to_string(i);
        for (unsigned j = 0; j <= n; ++j) {
            double e = semantic ? sdc::expected_intersection_semantic(n, i, j)
                                : sdc::expected_intersection_nonsemantic(n, i, j);
            std::snprintf(buf, sizeof buf, ",%.10g", e);
            csv += buf;
        }
        csv += "\n";
    }
    emit_or_print(opt.sdc_out, csv);
    return 0;
}

int cmd_sdc_simulate(const CliOptions& opt) {
    const unsigned n = static_cast<unsigned>(opt.sdc_n);
    const unsigned i = static_cast<unsigned>(opt.sdc_i);
    const unsigned j = static_cast<unsigned>(opt.sdc_j);
    sdc::LotteryMode mode;
    if (opt.sdc_mode == "semantic")
        mode = sdc::LotteryMode::semantic;
    else if (opt.sdc_mode == "nonsemantic")
        mode = sdc::LotteryMode::nonsemantic;
    else
        throw config_error("sdc simulate mode must be semantic|nonsemantic");
    sdc::IntersectionKind kind;
    if (opt.sdc_kind == "set")
        kind = sdc::IntersectionKind::set_intersection;
    else if (opt.sdc_kind == "avd")
        kind = sdc::IntersectionKind::avd;
    else
        throw config_error("sdc simulate kind must be set|avd");

    sdc::DiscretePmf empirical =
        sdc::monte_carlo_intersection(n, i, j, mode, kind, opt.sdc_trials, opt.sdc_seed);
    emit_or_print(opt.sdc_out, pmf_csv(empirical));

    // Pair the empirical run with its analytic counterpart where one exists.
    sdc::DiscretePmf analytic;
    bool have_analytic = true;
    if (mode == sdc::LotteryMode::semantic &&
        kind == sdc::IntersectionKind::set_intersection) {
        analytic = sdc::semantic_intersection_pmf(n, i, j);
    } else if (mode == sdc::LotteryMode::nonsemantic &&
               kind == sdc::IntersectionKind::set_intersection) {
        analytic = sdc::nonsemantic_intersection_pmf(n, i, j);
    } else if (mode == sdc::LotteryMode::semantic) {
        analytic = sdc::nondistributional_semantic_pmf(n, i, j);
    } else {
        // nonsemantic AVD coincides with the set intersection, doubled support
        analytic = sdc::nonsemantic_intersection_pmf(n, i, j);
        for (auto& v : analytic.support) v *= 2;
        analytic.mode += "-2z";
    }
    if (have_analytic) {
        std::fprintf(stderr, "TV(empirical, analytic) = %.6f over %zu trials\n",
                     sdc::total_variation(empirical, analytic), opt.sdc_trials);
    }
    return 0;
}

int cmd_ifc(const CliOptions& opt) {
    Corpus reference = load_with_format(opt.ifc_reference, "");
    std::vector<Corpus> steps;
    steps.reserve(opt.ifc_steps.size());
    for (const auto& p : opt.ifc_steps) steps.push_back(load_with_format(p, ""));

    MetricConfig mc;
    EmbeddingSpec emb;
    emb.dims = opt.ifc_dims;
    TrendReport report =
        ifc_trend(reference, steps, metric_from_string(opt.ifc_metric), mc, emb,
                  opt.ifc_seed);
    std::string text = trend_to_json(report);
    emit_or_print(opt.ifc_out, text);
    if (!opt.ifc_out.empty())
        std::cout << "trend: slope=" << report.slope << " rho=" << report.spearman_rho
                  << " baseline=" << report.baseline_self_distance << "\n";
    return 0;
}

int cmd_report(const CliOptions& opt) {
    std::ifstream in(opt.report_from);
    if (!in) throw data_error("cannot open report: " + opt.report_from);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EvaluationResult result = report_from_json(text);
    ReportFormat fmt;
    if (opt.report_format == "json")
        fmt = ReportFormat::json;
    else if (opt.report_format == "csv")
        fmt = ReportFormat::csv;
    else if (opt.report_format == "plotdata")
        fmt = ReportFormat::plotdata;
    else
        throw config_error("report format must be json|csv|plotdata");
    auto files = emit_report(result, fmt, opt.report_out);
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simbench: evaluation harness for corpus-similarity metrics"};
    app.require_subcommand(1);
    CliOptions opt;

    auto* embed = app.add_subcommand("embed", "embed a corpus with the builtin hasher");
    embed->add_option("--in", opt.embed_in, "corpus file")->required();
    embed->add_option("--format", opt.embed_format, "jsonl|txt|csv (default: by extension)");
    embed->add_option("--dims", opt.embed_dims, "embedding width");
    embed->add_option("--seed", opt.embed_seed, "embedding seed")->required();
    embed->add_option("--out", opt.embed_out, "output (.csv for text format)")->required();

    auto* ksc = app.add_subcommand("ksc", "known-similarity corpora tools");
    auto* ksc_build = ksc->add_subcommand("build", "materialize a KSC collection");
    ksc_build->add_option("--a", opt.ksc_a, "source corpus A")->required();
    ksc_build->add_option("--b", opt.ksc_b, "source corpus B")->required();
    ksc_build->add_option("--a-format", opt.ksc_a_format, "format of A");
    ksc_build->add_option("--b-format", opt.ksc_b_format, "format of B");
    ksc_build->add_option("--n", opt.ksc_n, "samples per corpus");
    ksc_build->add_option("--k", opt.ksc_k, "number of corpora");
    ksc_build->add_option("--seed", opt.ksc_seed, "sampling seed")->required();
    ksc_build->add_option("--out", opt.ksc_out, "output directory")->required();
    ksc->require_subcommand(1);

    auto* evaluate = app.add_subcommand("evaluate", "run the full measure suite");
    evaluate->add_option("--config", opt.eval_config, "TOML or JSON config file");
    evaluate->add_option("--a", opt.eval_a, "source corpus A");
    evaluate->add_option("--b", opt.eval_b, "source corpus B");
    evaluate->add_option("--n", opt.eval_n, "samples per KSC corpus");
    evaluate->add_option("--k", opt.eval_k, "KSC resolution");
    evaluate->add_option("--reps", opt.eval_reps, "KSC repetitions");
    evaluate->add_option("--dims", opt.eval_dims, "builtin embedding width");
    evaluate->add_option("--workers", opt.eval_workers, "worker budget");
    evaluate->add_option("--metrics", opt.eval_metrics, "metric names")->delimiter(',');
    evaluate->add_option("--out", opt.eval_out, "output directory");
    evaluate->add_option("--seed", opt.eval_seed, "run seed")->required();
    evaluate->add_flag("--no-robustness", opt.eval_no_robustness, "skip S and I sweeps");
    evaluate->add_flag("--no-timing", opt.eval_no_timing, "skip the timing measure");

    auto* sdc_cmd = app.add_subcommand("sdc", "double-lottery probability model");
    auto* sdc_pmf = sdc_cmd->add_subcommand("pmf", "analytic intersection pmf as CSV");
    sdc_pmf->add_option("--n", opt.sdc_n, "universe size")->required();
    sdc_pmf->add_option("--i", opt.sdc_i, "first draw size")->required();
    sdc_pmf->add_option("--j", opt.sdc_j, "second sample first-draw size")->required();
    sdc_pmf->add_option("--mode", opt.sdc_mode, "semantic|nonsemantic|avd-semantic");
    sdc_pmf->add_option("--out", opt.sdc_out, "output CSV (default: stdout)");
    auto* sdc_expect = sdc_cmd->add_subcommand("expect", "expectation grid as CSV");
    sdc_expect->add_option("--n", opt.sdc_n, "universe size")->required();
    sdc_expect->add_option("--mode", opt.sdc_mode, "semantic|nonsemantic");
    sdc_expect->add_option("--out", opt.sdc_out, "output CSV (default: stdout)");
    auto* sdc_sim = sdc_cmd->add_subcommand("simulate", "Monte-Carlo oracle run");
    sdc_sim->add_option("--n", opt.sdc_n, "universe size")->required();
    sdc_sim->add_option("--i", opt.sdc_i, "first draw size")->required();
    sdc_sim->add_option("--j", opt.sdc_j, "second sample first-draw size")->required();
    sdc_sim->add_option("--mode", opt.sdc_mode, "semantic|nonsemantic");
    sdc_sim->add_option("--kind", opt.sdc_kind, "set|avd");
    sdc_sim->add_option("--trials", opt.sdc_trials, "number of trials");
    sdc_sim->add_option("--seed", opt.sdc_seed, "simulation seed")->required();
    sdc_sim->add_option("--out", opt.sdc_out, "output CSV (default: stdout)");
    sdc_cmd->require_subcommand(1);

    auto* ifc = app.add_subcommand("ifc", "trend evaluation against a reference corpus");
    ifc->add_option("--reference", opt.ifc_reference, "reference corpus")->required();
    ifc->add_option("--step", opt.ifc_steps, "step corpus (repeat, in order)")->required();
    ifc->add_option("--metric", opt.ifc_metric, "metric name");
    ifc->add_option("--dims", opt.ifc_dims, "builtin embedding width");
    ifc->add_option("--seed", opt.ifc_seed, "seed")->required();
    ifc->add_option("--out", opt.ifc_out, "output JSON (default: stdout)");

    auto* report = app.add_subcommand("report", "re-emit a stored report");
    report->add_option("--from", opt.report_from, "report.json path")->required();
    report->add_option("--format", opt.report_format, "json|csv|plotdata");
    report->add_option("--out", opt.report_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad flags are config errors
    }

    try {
        if (embed->parsed()) return cmd_embed(opt);
        if (ksc_build->parsed()) return cmd_ksc_build(opt);
        if (evaluate->parsed()) return cmd_evaluate(opt);
        if (sdc_pmf->parsed()) return cmd_sdc_pmf(opt);
        if (sdc_expect->parsed()) return cmd_sdc_expect(opt);
        if (sdc_sim->parsed()) return cmd_sdc_simulate(opt);
        if (ifc->parsed()) return cmd_ifc(opt);
        if (report->parsed()) return cmd_report(opt);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
