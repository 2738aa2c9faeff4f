// glossqe: index TREC collections, run query expansion experiments, evaluate.
//
// Exit codes: 0 success, 1 usage, 2 data/parse error, 3 internal invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "glossqe/corpus.hpp"
#include "glossqe/error.hpp"
#include "glossqe/eval.hpp"
#include "glossqe/experiment.hpp"
#include "glossqe/index.hpp"

using namespace glossqe;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

QrelSet read_qrels(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_qrels(in);
}

RunFile read_run_file(const std::string& path) {
    std::istringstream in(read_file(path));
    return read_run(in);
}

std::vector<Topic> read_topics(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_topics(in);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

// Settings shared by search/expand/run: a config file, then flags on top.
struct ExperimentFlags {
    std::string config_path;
    std::optional<std::string> index, topics, qrels, wordnet, lexicon, stopwords, method, tag;
    std::optional<std::size_t> depth, prd_docs, num_terms;
    std::optional<unsigned> threads;
    std::optional<double> beta, alpha, mu, lambda;
    std::optional<std::string> rel_mode;
    std::vector<std::string> overrides;

    void add_to(CLI::App* app, bool with_method) {
        app->add_option("--config", config_path, "key = value experiment config file");
        app->add_option("--index", index, "index file");
        app->add_option("--topics", topics, "TREC topic file");
        app->add_option("--stopwords", stopwords, "stopword list (default: bundled)");
        app->add_option("--k,--depth", depth, "documents retrieved per topic");
        app->add_option("--threads", threads, "topics processed in parallel");
        app->add_option("--tag", tag, "run tag");
        if (!with_method) return;
        app->add_option("--method", method, "baseline|pwnet|nownet|fnpw|kld|rm3|kldlca|klwnet");
        app->add_option("--qrels", qrels, "relevance judgments");
        app->add_option("--wordnet", wordnet, "WordNet 3.x database directory");
        app->add_option("--lexicon", lexicon, "TSV gloss lexicon (lemma<TAB>gloss)");
        app->add_option("--D", prd_docs, "pseudo-relevant documents for the chosen method");
        app->add_option("--T", num_terms, "expansion terms for the chosen method");
        app->add_option("--beta", beta, "original-term multiplier for the chosen method");
        app->add_option("--alpha", alpha, "KLWNET mixture weight");
        app->add_option("--mu", mu, "RM3 Dirichlet prior");
        app->add_option("--lambda", lambda, "RM3 original-query weight");
        app->add_option("--rel-mode", rel_mode, "dice|jaccard");
        app->add_option("--set", overrides, "extra key=value settings, e.g. kldlca.T=40");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
        auto put = [&](const char* key, const auto& v) {
            if (!v) return;
            std::ostringstream s;
            s.precision(17);
            s << *v;
            cfg.set(key, s.str());
        };
        put("index", index);
        put("topics", topics);
        put("qrels", qrels);
        put("wordnet", wordnet);
        put("lexicon", lexicon);
        put("stopwords", stopwords);
        put("method", method);
        put("tag", tag);
        put("depth", depth);
        put("threads", threads);
        put("rel_mode", rel_mode);
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        auto& mc = cfg.settings[cfg.method];
        if (prd_docs) mc.prd_docs = *prd_docs;
        if (num_terms) mc.num_terms = *num_terms;
        if (beta) mc.beta = *beta;
        if (mu) mc.mu = *mu;
        if (lambda) mc.lambda = *lambda;
        if (alpha) cfg.settings.klwnet.alpha = *alpha;
        cfg.validate();
        return cfg;
    }
};

int cmd_index(const std::vector<std::string>& corpus, const std::string& out, const std::string& stopwords,
              unsigned threads) {
    ExperimentConfig cfg;
    cfg.stopwords = stopwords;
    const auto analyzer = make_analyzer(cfg);
    std::vector<Document> docs;
    for (const auto& path : corpus) {
        auto part = parse_trec_docs(read_file(path));
        std::cerr << path << ": " << part.size() << " documents\n";
        docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    const auto index = InvertedIndex::build(docs, analyzer, threads);
    index.save(out);
    const auto s = index.stats();
    std::cerr << "indexed " << s.num_docs << " documents, " << index.num_terms() << " terms, " << s.total_tokens
              << " tokens -> " << out << '\n';
    return kOk;
}

int cmd_search(const ExperimentConfig& cfg, const std::string& out_path) {
    auto c = cfg;
    c.method = Method::Baseline;
    auto result = run_experiment(c);
    auto out = open_out(out_path);
    write_run(out, result.run, cfg.tag.empty() ? "baseline" : cfg.tag);
    return kOk;
}

int cmd_expand(const ExperimentConfig& cfg, const std::string& out_path) {
    const auto index = InvertedIndex::load(cfg.index);
    const auto analyzer = make_analyzer(cfg);
    auto lex = load_lexicon(cfg);
    if (needs_lexicon(cfg.method) && !lex)
        throw std::invalid_argument(std::string(method_name(cfg.method)) + " needs --wordnet or --lexicon");
    ExpansionContext ctx{index, analyzer, lex ? &*lex : nullptr};
    const auto queries = expand_topics(ctx, cfg.method, read_topics(cfg.topics), cfg.settings, cfg.threads);
    auto out = open_out(out_path);
    write_expanded(out, queries);
    return kOk;
}

int cmd_run(const ExperimentConfig& cfg, const std::string& out_path) {
    auto result = run_experiment(cfg);
    const std::string tag = cfg.tag.empty() ? std::string(method_name(cfg.method)) : cfg.tag;
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_run(out, result.run, tag);
    }
    if (result.report) {
        for (auto t : result.report->skipped) std::cerr << "warning: topic " << t << " has no relevant documents\n";
        std::cout << format_report(*result.report, tag);
    }
    return kOk;
}

int cmd_eval(const std::string& run_path, const std::string& qrels_path, const std::string& baseline_path,
             bool per_topic) {
    const auto qrels = read_qrels(qrels_path);
    const auto run = read_run_file(run_path);
    auto report = evaluate(run, qrels);
    for (auto t : report.skipped) std::cerr << "warning: topic " << t << " has no relevant documents\n";
    if (per_topic)
        for (const auto& t : report.per_topic)
            std::cout << "AP\t" << t.topic << '\t' << t.ap << "\tP@10\t" << t.p10 << "\trel_ret\t" << t.rel_ret << '\n';
    if (baseline_path.empty()) {
        std::cout << format_report(report, run_path);
        return kOk;
    }
    const auto base = evaluate(read_run_file(baseline_path), qrels);
    std::cout << format_comparison(compare(base, report), baseline_path, run_path);
    return kOk;
}

int cmd_compare(const std::string& run_a, const std::string& run_b, const std::string& qrels_path) {
    const auto qrels = read_qrels(qrels_path);
    const auto a = read_run_file(run_a);
    const auto b = read_run_file(run_b);
    std::vector<TopicId> topics_a, topics_b;
    for (const auto& [t, _] : a) topics_a.push_back(t);
    for (const auto& [t, _] : b) topics_b.push_back(t);
    if (topics_a != topics_b) throw std::invalid_argument("runs cover different topics");
    std::cout << format_comparison(compare(evaluate(a, qrels), evaluate(b, qrels)), run_a, run_b);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glossqe - gloss-overlap query expansion and TREC evaluation"};
    app.require_subcommand(1);

    std::vector<std::string> corpus;
    std::string index_out, stopwords;
    unsigned index_threads = 1;
    auto* index_cmd = app.add_subcommand("index", "build an index from TREC document files");
    index_cmd->add_option("--corpus", corpus, "TREC SGML files (.gz accepted)")->required();
    index_cmd->add_option("--out", index_out, "index file to write")->required();
    index_cmd->add_option("--stopwords", stopwords, "stopword list (default: bundled)");
    index_cmd->add_option("--threads", index_threads, "indexing partitions");

    ExperimentFlags search_flags, expand_flags, run_flags;
    std::string search_out, expand_out, run_out;
    auto* search_cmd = app.add_subcommand("search", "retrieve title queries without expansion");
    search_flags.add_to(search_cmd, false);
    search_cmd->add_option("--out", search_out, "run file to write")->required();

    auto* expand_cmd = app.add_subcommand("expand", "write expanded queries as topic/term/weight TSV");
    expand_flags.add_to(expand_cmd, true);
    expand_cmd->add_option("--out", expand_out, "TSV file to write")->required();

    auto* run_cmd = app.add_subcommand("run", "expand, retrieve and evaluate one method");
    run_flags.add_to(run_cmd, true);
    run_cmd->add_option("--out", run_out, "run file to write");

    std::string eval_run, eval_qrels, eval_base;
    bool eval_per_topic = false;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a run file");
    eval_cmd->add_option("--run", eval_run, "run file")->required();
    eval_cmd->add_option("--qrels", eval_qrels, "relevance judgments")->required();
    eval_cmd->add_option("--baseline-run", eval_base, "baseline run for deltas and significance");
    eval_cmd->add_flag("--per-topic", eval_per_topic, "print per-topic AP");

    std::string cmp_a, cmp_b, cmp_qrels;
    auto* compare_cmd = app.add_subcommand("compare", "compare two runs side by side");
    compare_cmd->add_option("run_a", cmp_a, "baseline run")->required();
    compare_cmd->add_option("run_b", cmp_b, "method run")->required();
    compare_cmd->add_option("--qrels", cmp_qrels, "relevance judgments")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*index_cmd) return cmd_index(corpus, index_out, stopwords, index_threads);
        if (*search_cmd) return cmd_search(search_flags.resolve(), search_out);
        if (*expand_cmd) return cmd_expand(expand_flags.resolve(), expand_out);
        if (*run_cmd) return cmd_run(run_flags.resolve(), run_out);
        if (*eval_cmd) return cmd_eval(eval_run, eval_qrels, eval_base, eval_per_topic);
        if (*compare_cmd) return cmd_compare(cmp_a, cmp_b, cmp_qrels);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
