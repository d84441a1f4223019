#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgex/engine.hpp"
#include "kgex/error.hpp"
#include "kgex/index_io.hpp"

namespace kgex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double gamma = 0.0;
    bool gamma_set = false;
    double tau = 0.0;
    bool tau_set = false;
    size_t top_paths = 0;
    size_t max_hops = 0;
    size_t jobs = 0;
    bool jobs_set = false;
    bool no_kg = false;
    bool no_pruning = false;
    bool no_spec = false;
    bool no_mmr = false;
    bool only_1hop = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_config_default = false) {
    auto* c = cmd->add_option("--config", opt.config_path, "Engine config file (JSON)");
    if (with_config_default) {
        opt.config_path = "data/toy/config.json";
        c->capture_default_str();
    } else {
        c->required();
    }
    cmd->add_option("--out", opt.out_dir,
                    "Output directory (default: runs/<timestamp>-<config hash>)");
    cmd->add_option("--seed", opt.seed, "Override embedding seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--gamma", opt.gamma, "Override MMR gamma")
        ->each([&](const std::string&) { opt.gamma_set = true; });
    cmd->add_option("--tau", opt.tau, "Override proxy threshold tau")
        ->each([&](const std::string&) { opt.tau_set = true; });
    cmd->add_option("--top-paths", opt.top_paths, "Override number of selected paths");
    cmd->add_option("--max-hops", opt.max_hops, "Override maximum hop depth (1..3)");
    cmd->add_option("--jobs", opt.jobs, "Worker threads (0 = available cores)")
        ->each([&](const std::string&) { opt.jobs_set = true; });
    cmd->add_flag("--no-kg", opt.no_kg, "Ablation: drop the evidence block");
    cmd->add_flag("--no-pruning", opt.no_pruning,
                  "Ablation: relevance-only scores, plain top-N selection");
    cmd->add_flag("--no-spec", opt.no_spec, "Ablation: node specificity := 1");
    cmd->add_flag("--no-mmr", opt.no_mmr, "Ablation: gamma := 1");
    cmd->add_flag("--only-1hop", opt.only_1hop, "Ablation: max_hops := 1");
}

EngineConfig load_effective_config(const CommonOptions& opt) {
    EngineConfig config = load_config_file(opt.config_path);
    if (opt.seed_set) config.seed = opt.seed;
    if (opt.gamma_set) config.gamma = opt.gamma;
    if (opt.tau_set) config.tau = opt.tau;
    if (opt.top_paths > 0) config.top_paths = opt.top_paths;
    if (opt.max_hops > 0) config.max_hops = opt.max_hops;
    if (opt.jobs_set) config.jobs = opt.jobs;
    config.ablations.no_kg |= opt.no_kg;
    config.ablations.no_pruning |= opt.no_pruning;
    config.ablations.no_spec |= opt.no_spec;
    config.ablations.no_mmr |= opt.no_mmr;
    config.ablations.only_1hop |= opt.only_1hop;
    config.validate();
    return config;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

fs::path run_directory(const CommonOptions& opt, const EngineConfig& config) {
    fs::path dir = opt.out_dir.empty()
                       ? fs::path("runs") / (utc_timestamp() + "-" + config.hash().substr(0, 8))
                       : fs::path(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json retrieval_to_json(const Engine& engine, const RetrievalResult& result) {
    json j;
    j["user_id"] = result.user_id;
    j["item_id"] = result.target_item_id;
    j["candidates"] = result.candidate_count;
    j["truncated"] = result.truncated;
    j["attention"] = result.intent.weights;
    j["paths"] = json::array();
    for (const auto& rp : result.selected) {
        json p;
        p["line"] = serialize_path(rp.path, engine.graph());
        p["hops"] = rp.path.hops();
        json entities = json::array();
        for (EntityId e : rp.path.entities) entities.push_back(engine.graph().entity_name(e));
        json relations = json::array();
        for (RelationId r : rp.path.relations) {
            relations.push_back(engine.graph().relation_name(r));
        }
        p["entities"] = entities;
        p["relations"] = relations;
        p["score"] = {{"relevance", rp.score.relevance},
                      {"mean_specificity", rp.score.mean_specificity},
                      {"final", rp.score.final_score}};
        json nodes = json::array();
        for (const auto& ns : rp.score.nodes) {
            nodes.push_back({{"entity", engine.graph().entity_name(ns.entity)},
                             {"structural", ns.terms.structural},
                             {"semantic", ns.terms.semantic},
                             {"preference", ns.terms.preference},
                             {"combined", ns.terms.combined}});
        }
        p["node_specificity"] = nodes;
        j["paths"].push_back(std::move(p));
    }
    return j;
}

json report_to_json(const EvalReport& report) {
    json j;
    j["corpus"] = {{"f_ehr", report.corpus_f_ehr},
                   {"p_ehr", report.corpus_p_ehr},
                   {"scoreable", report.scoreable_count},
                   {"unscoreable", report.unscoreable_count}};
    j["verdicts"] = report.verdict_histogram;
    j["instances"] = json::array();
    for (const auto& inst : report.instances) {
        json ji;
        ji["user_id"] = inst.user_id;
        ji["item_id"] = inst.item_id;
        ji["scoreable"] = inst.scoreable;
        if (inst.scoreable) {
            ji["f_ehr"] = inst.f_ehr;
            ji["p_ehr"] = inst.p_ehr;
        }
        json verdicts = json::array();
        for (const auto& v : inst.verdicts) {
            verdicts.push_back({{"feature", v.feature},
                                {"factual", to_string(v.factual)},
                                {"preference", to_string(v.preference)},
                                {"proxy_score", v.proxy_score}});
        }
        ji["features"] = verdicts;
        j["instances"].push_back(std::move(ji));
    }
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::vector<EvalInstanceSource> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    std::vector<EvalInstanceSource> sources;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
            EvalInstanceSource s;
            s.user_id = j.at("user_id").get<std::string>();
            s.item_id = j.at("item_id").get<std::string>();
            s.explanation = j.value("explanation", "");
            if (j.contains("features")) {
                s.provided_features = j["features"].get<std::vector<std::string>>();
            }
            sources.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return sources;
}

std::vector<double> parse_tau_grid(const std::string& spec) {
    // "lo:hi:step"
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 ||
        hi < lo) {
        throw ConfigError("bad tau sweep spec (want lo:hi:step): " + spec);
    }
    std::vector<double> grid;
    for (double t = lo; t <= hi + 1e-12; t += step) grid.push_back(t);
    return grid;
}

int cmd_index(const CommonOptions& opt) {
    EngineConfig config = load_effective_config(opt);
    const auto t0 = std::chrono::steady_clock::now();
    Engine engine = Engine::build(config);
    engine.save_index();
    const auto t1 = std::chrono::steady_clock::now();
    std::cout << "indexed " << engine.graph().entity_count() << " entities, "
              << engine.graph().relation_count() << " relations, "
              << engine.graph().triple_count() << " triples, "
              << engine.catalog().size() << " items, " << engine.histories().size()
              << " users\n";
    std::cout << "aggregated dim=" << engine.store().dim() << " layers="
              << config.aggregation_layers << " clusters=" << config.cluster_count << "\n";
    std::cout << "index written to " << config.index_dir << " ("
              << std::chrono::duration<double>(t1 - t0).count() << " s)\n";
    return 0;
}

int cmd_retrieve(const CommonOptions& opt, const std::string& user, const std::string& item) {
    EngineConfig config = load_effective_config(opt);
    Engine engine = Engine::load(config);
    RetrievalResult result = engine.retrieve(user, item);
    json j = retrieval_to_json(engine, result);

    fs::path dir = run_directory(opt, config);
    write_text(dir / "retrieval.jsonl", j.dump() + "\n");

    std::cout << "selected " << result.selected.size() << " of " << result.candidate_count
              << " candidate paths" << (result.truncated ? " (candidates truncated)" : "")
              << "\n";
    for (const auto& rp : result.selected) {
        std::cout << "  S=" << rp.score.final_score << "  rel=" << rp.score.relevance
                  << "  spec=" << rp.score.mean_specificity << "  "
                  << serialize_path(rp.path, engine.graph()) << "\n";
    }
    std::cout << "wrote " << (dir / "retrieval.jsonl").string() << "\n";
    return 0;
}

int cmd_explain(const CommonOptions& opt, const std::string& user, const std::string& item,
                bool dump_prompt) {
    EngineConfig config = load_effective_config(opt);
    Engine engine = Engine::load(config);
    fs::path dir = run_directory(opt, config);

    if (dump_prompt) {
        PromptBundle bundle;
        if (config.ablations.no_kg) {
            bundle = engine.build_prompt(user, item, nullptr);
        } else {
            RetrievalResult r = engine.retrieve(user, item);
            bundle = engine.build_prompt(user, item, &r);
        }
        write_text(dir / "prompt.txt", bundle.text());
        std::cout << "wrote " << (dir / "prompt.txt").string() << "\n";
        return 0;
    }

    auto backend = make_generation_backend(config.generation_backend, config.completion_url,
                                           config.auth_token, config.backend_timeout_seconds);
    ExplainResult result = engine.explain(user, item, *backend);

    json prov;
    prov["user_id"] = user;
    prov["item_id"] = item;
    prov["backend"] = result.response.backend;
    prov["latency_ms"] = result.response.latency_ms;
    prov["prompt_hash"] = fnv_hex(result.bundle.text());
    prov["config_hash"] = config.hash();
    prov["decoding"] = {{"max_tokens", config.decoding.max_tokens},
                        {"temperature", config.decoding.temperature},
                        {"seed", config.decoding.seed}};
    json paths = json::array();
    for (const auto& rp : result.retrieval.selected) {
        paths.push_back(serialize_path(rp.path, engine.graph()));
    }
    prov["evidence"] = paths;

    write_text(dir / "explanation.txt", result.response.text + "\n");
    write_text(dir / "prompt.txt", result.bundle.text());
    write_text(dir / "provenance.json", prov.dump(2) + "\n");
    std::cout << result.response.text << "\n";
    std::cout << "wrote " << (dir / "explanation.txt").string() << "\n";
    return 0;
}

int cmd_eval(const CommonOptions& opt, const std::string& corpus_path,
             const std::string& tau_sweep) {
    EngineConfig config = load_effective_config(opt);
    Engine engine = Engine::load(config);
    std::vector<EvalInstanceSource> sources = load_corpus(corpus_path);

    EvalOptions eopts;
    eopts.tau = config.tau;
    eopts.jobs = config.jobs;
    if (!tau_sweep.empty()) eopts.tau_grid = parse_tau_grid(tau_sweep);

    EvalReport report = engine.evaluate(sources, eopts);
    fs::path dir = run_directory(opt, config);
    write_text(dir / "report.json", report_to_json(report).dump(2) + "\n");

    std::cout << "instances: " << report.instances.size() << " (scoreable "
              << report.scoreable_count << ", unscoreable " << report.unscoreable_count
              << ")\n";
    std::cout << "corpus F-EHR: " << report.corpus_f_ehr << "\n";
    std::cout << "corpus P-EHR: " << report.corpus_p_ehr << " (tau=" << config.tau << ")\n";
    for (const auto& [verdict, count] : report.verdict_histogram) {
        std::cout << "  " << verdict << ": " << count << "\n";
    }
    if (!report.tau_sweep.empty()) {
        std::string csv = "tau,p_ehr\n";
        for (const auto& row : report.tau_sweep) {
            csv += format_double(row.tau) + "," + format_double(row.p_ehr) + "\n";
        }
        write_text(dir / "tau_sweep.csv", csv);
        std::cout << "wrote " << (dir / "tau_sweep.csv").string() << "\n";
    }
    std::cout << "wrote " << (dir / "report.json").string() << "\n";
    return 0;
}

int cmd_demo(const CommonOptions& opt) {
    EngineConfig config = load_effective_config(opt);
    std::cout << "building index in memory from " << config.triples_path << " ...\n";
    Engine engine = Engine::build(config);

    EngineConfig no_pruning_config = config;
    no_pruning_config.ablations.no_pruning = true;
    Engine no_pruning(Engine::build(no_pruning_config));

    StubBackend stub;
    const std::vector<std::pair<std::string, std::string>> queries = {
        {"u_nora", "b_eleanor"}, {"u_kai", "b_dune"}};

    std::vector<EvalInstanceSource> pruned_corpus;
    std::vector<EvalInstanceSource> raw_corpus;
    for (const auto& [user, item] : queries) {
        ExplainResult full = engine.explain(user, item, stub);
        ExplainResult raw = no_pruning.explain(user, item, stub);
        std::cout << "\n=== " << user << " -> " << item << " ===\n";
        std::cout << "evidence (preference-aware):\n";
        for (const auto& rp : full.retrieval.selected) {
            std::cout << "  " << serialize_path(rp.path, engine.graph()) << "\n";
        }
        std::cout << "explanation: " << full.response.text << "\n";
        std::cout << "evidence (no pruning):\n";
        for (const auto& rp : raw.retrieval.selected) {
            std::cout << "  " << serialize_path(rp.path, engine.graph()) << "\n";
        }
        std::cout << "explanation: " << raw.response.text << "\n";
        pruned_corpus.push_back({user, item, full.response.text, std::nullopt});
        raw_corpus.push_back({user, item, raw.response.text, std::nullopt});
    }

    EvalOptions eopts;
    eopts.tau = config.tau;
    EvalReport pruned_report = engine.evaluate(pruned_corpus, eopts);
    EvalReport raw_report = engine.evaluate(raw_corpus, eopts);
    std::cout << "\n                F-EHR   P-EHR\n";
    std::cout << "with pruning    " << pruned_report.corpus_f_ehr << "      "
              << pruned_report.corpus_p_ehr << "\n";
    std::cout << "no pruning      " << raw_report.corpus_f_ehr << "      "
              << raw_report.corpus_p_ehr << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"knowledge-graph evidence selection and explanation faithfulness toolkit"};
    app.require_subcommand(1);

    CommonOptions index_opt;
    auto* index_cmd = app.add_subcommand("index", "Build and persist the index");
    add_common(index_cmd, index_opt);

    CommonOptions retrieve_opt;
    std::string retrieve_user, retrieve_item;
    auto* retrieve_cmd =
        app.add_subcommand("retrieve", "Select evidence paths for a (user, item) pair");
    add_common(retrieve_cmd, retrieve_opt);
    retrieve_cmd->add_option("--user", retrieve_user, "User id")->required();
    retrieve_cmd->add_option("--item", retrieve_item, "Target item id")->required();

    CommonOptions explain_opt;
    std::string explain_user, explain_item;
    bool dump_prompt = false;
    auto* explain_cmd =
        app.add_subcommand("explain", "Generate an explanation for a (user, item) pair");
    add_common(explain_cmd, explain_opt);
    explain_cmd->add_option("--user", explain_user, "User id")->required();
    explain_cmd->add_option("--item", explain_item, "Target item id")->required();
    explain_cmd->add_flag("--dump-prompt", dump_prompt,
                          "Write the prompt bundle without calling any backend");

    CommonOptions eval_opt;
    std::string corpus_path, tau_sweep;
    auto* eval_cmd = app.add_subcommand("eval", "Score an explanation corpus");
    add_common(eval_cmd, eval_opt);
    eval_cmd->add_option("--corpus", corpus_path, "Corpus JSONL file")->required();
    eval_cmd->add_option("--tau-sweep", tau_sweep, "P-EHR sweep grid lo:hi:step");

    CommonOptions demo_opt;
    auto* demo_cmd =
        app.add_subcommand("demo", "End-to-end walkthrough on the bundled toy dataset");
    add_common(demo_cmd, demo_opt, /*with_config_default=*/true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (index_cmd->parsed()) return cmd_index(index_opt);
        if (retrieve_cmd->parsed()) return cmd_retrieve(retrieve_opt, retrieve_user, retrieve_item);
        if (explain_cmd->parsed()) {
            return cmd_explain(explain_opt, explain_user, explain_item, dump_prompt);
        }
        if (eval_cmd->parsed()) return cmd_eval(eval_opt, corpus_path, tau_sweep);
        if (demo_cmd->parsed()) return cmd_demo(demo_opt);
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace kgex::cli
