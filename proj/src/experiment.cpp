#include "glossqe/experiment.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "glossqe/error.hpp"

namespace glossqe {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t to_size(const std::string& key, const std::string& v) {
    std::size_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::invalid_argument("config: " + key + " needs a non-negative integer, got '" + v + "'");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: " + key + " needs a number, got '" + v + "'");
}

// shortest text that parses back to the same double
std::string num(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Methods with per-method settings, in serialization order.
constexpr Method kTunable[] = {Method::PWnet, Method::NoWnet, Method::FnPw, Method::Kld,
                               Method::Rm3,   Method::KldLca, Method::KlWnet};

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mu);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "corpus") {
        corpus.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) corpus.push_back(item);
        }
    } else if (key == "index") {
        index = value;
    } else if (key == "topics") {
        topics = value;
    } else if (key == "qrels") {
        qrels = value;
    } else if (key == "wordnet") {
        wordnet = value;
    } else if (key == "lexicon") {
        lexicon = value;
    } else if (key == "stopwords") {
        stopwords = value;
    } else if (key == "method") {
        method = parse_method(value);
    } else if (key == "depth" || key == "k") {
        depth = to_size(key, value);
    } else if (key == "threads") {
        threads = static_cast<unsigned>(to_size(key, value));
    } else if (key == "tag") {
        tag = value;
    } else if (key == "rel_mode") {
        OverlapMode mode;
        if (value == "dice") mode = OverlapMode::Dice;
        else if (value == "jaccard") mode = OverlapMode::Jaccard;
        else throw std::invalid_argument("config: rel_mode must be dice or jaccard");
        for (auto m : kTunable) settings[m].mode = mode;
    } else {
        auto dot = key.find('.');
        if (dot == std::string::npos) throw std::invalid_argument("config: unknown key '" + key + "'");
        Method m = parse_method(key.substr(0, dot));
        if (m == Method::Baseline) throw std::invalid_argument("config: baseline has no parameters");
        auto& c = settings[m];
        const auto field = key.substr(dot + 1);
        const bool rm3 = m == Method::Rm3;
        const bool klwnet = m == Method::KlWnet;
        if (field == "D" && !klwnet) c.prd_docs = to_size(key, value);
        else if (field == "T" && !klwnet) c.num_terms = to_size(key, value);
        else if (field == "beta" && !klwnet && !rm3) c.beta = to_double(key, value);
        else if (field == "alpha" && klwnet) c.alpha = to_double(key, value);
        else if (field == "mu" && rm3) c.mu = to_double(key, value);
        else if (field == "lambda" && rm3) c.lambda = to_double(key, value);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    std::string joined;
    for (const auto& c : corpus) joined += (joined.empty() ? "" : ",") + c;
    out << "corpus = " << joined << '\n'
        << "index = " << index << '\n'
        << "topics = " << topics << '\n'
        << "qrels = " << qrels << '\n'
        << "wordnet = " << wordnet << '\n'
        << "lexicon = " << lexicon << '\n'
        << "stopwords = " << stopwords << '\n'
        << "method = " << method_name(method) << '\n'
        << "depth = " << depth << '\n'
        << "threads = " << threads << '\n'
        << "tag = " << tag << '\n'
        << "rel_mode = " << (settings.pwnet.mode == OverlapMode::Jaccard ? "jaccard" : "dice") << '\n';
    for (auto m : kTunable) {
        const auto& c = settings[m];
        const auto name = std::string(method_name(m));
        if (m == Method::KlWnet) {
            out << name << ".alpha = " << num(c.alpha) << '\n';
            continue;
        }
        out << name << ".D = " << c.prd_docs << '\n' << name << ".T = " << c.num_terms << '\n';
        if (m == Method::Rm3)
            out << name << ".mu = " << num(c.mu) << '\n' << name << ".lambda = " << num(c.lambda) << '\n';
        else
            out << name << ".beta = " << num(c.beta) << '\n';
    }
    return out.str();
}

void ExperimentConfig::validate() const {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    for (auto m : kTunable) settings[m].validate();
}

std::vector<ExpandedQuery> expand_topics(const ExpansionContext& ctx, Method method, const std::vector<Topic>& topics,
                                         const ExpansionSettings& settings, unsigned threads) {
    std::vector<ExpandedQuery> out(topics.size());
    parallel_for(topics.size(), threads, [&](std::size_t i) {
        out[i] = expand(ctx, method, prepare_topic(topics[i], ctx.analyzer), settings);
    });
    return out;
}

RunFile run_topics(const ExpansionContext& ctx, Method method, const std::vector<Topic>& topics,
                   const ExpansionSettings& settings, std::size_t depth, unsigned threads) {
    std::vector<std::vector<RunEntry>> slots(topics.size());
    parallel_for(topics.size(), threads, [&](std::size_t i) {
        auto q = expand(ctx, method, prepare_topic(topics[i], ctx.analyzer), settings);
        slots[i] = to_run_entries(search(ctx.index, q.to_weighted(), depth));
    });
    RunFile run;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        if (run.count(topics[i].id)) throw DataError("duplicate topic " + std::to_string(topics[i].id));
        run[topics[i].id] = std::move(slots[i]);
    }
    return run;
}

Analyzer make_analyzer(const ExperimentConfig& cfg) {
    AnalyzerConfig ac;
    if (!cfg.stopwords.empty()) ac.stopwords = StopwordList::from_file(cfg.stopwords);
    return Analyzer(std::move(ac));
}

std::optional<GlossLexicon> load_lexicon(const ExperimentConfig& cfg) {
    if (!cfg.wordnet.empty()) return load_wordnet(cfg.wordnet);
    if (!cfg.lexicon.empty()) return load_tsv_lexicon(cfg.lexicon);
    return std::nullopt;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.index.empty()) throw std::invalid_argument("no index configured");
    if (cfg.topics.empty()) throw std::invalid_argument("no topics configured");
    const auto index = InvertedIndex::load(cfg.index);
    const auto analyzer = make_analyzer(cfg);
    std::optional<GlossLexicon> lex;
    if (needs_lexicon(cfg.method) || cfg.method == Method::NoWnet) lex = load_lexicon(cfg);
    if (needs_lexicon(cfg.method) && !lex)
        throw std::invalid_argument(std::string(method_name(cfg.method)) + " needs --wordnet or --lexicon");

    std::istringstream topic_stream(read_file(cfg.topics));
    const auto topics = parse_topics(topic_stream);
    ExpansionContext ctx{index, analyzer, lex ? &*lex : nullptr};

    ExperimentResult result;
    result.run = run_topics(ctx, cfg.method, topics, cfg.settings, cfg.depth, cfg.threads);
    if (!cfg.qrels.empty()) {
        std::istringstream qs(read_file(cfg.qrels));
        const auto qrels = parse_qrels(qs);
        std::vector<TopicId> ids;
        for (const auto& t : topics) ids.push_back(t.id);
        result.report = evaluate(result.run, qrels, ids);
    }
    return result;
}

}  // namespace glossqe
