#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glossqe/corpus.hpp"
#include "glossqe/eval.hpp"
#include "glossqe/expand.hpp"

namespace glossqe {

/// Everything a batch run needs. Serialized as flat `key = value` lines.
struct ExperimentConfig {
    std::vector<std::string> corpus;  // TREC document files, optionally .gz
    std::string index;
    std::string topics;
    std::string qrels;
    std::string wordnet;   // WordNet database directory
    std::string lexicon;   // TSV gloss lexicon, used when `wordnet` is empty
    std::string stopwords; // empty: bundled list
    Method method = Method::Baseline;
    ExpansionSettings settings;
    std::size_t depth = 1000;
    unsigned threads = 1;
    std::string tag;       // run tag; empty: method name

    /// Throws std::invalid_argument on an unknown key or bad value.
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    /// Applies one `key = value` setting.
    void set(const std::string& key, const std::string& value);
    std::string serialize() const;
    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Expands every topic, `threads` topics at a time; output in input order
/// and independent of the thread count.
std::vector<ExpandedQuery> expand_topics(const ExpansionContext& ctx, Method method, const std::vector<Topic>& topics,
                                         const ExpansionSettings& settings, unsigned threads);

/// Expands and searches every topic to `depth`.
RunFile run_topics(const ExpansionContext& ctx, Method method, const std::vector<Topic>& topics,
                   const ExpansionSettings& settings, std::size_t depth, unsigned threads);

struct ExperimentResult {
    RunFile run;
    std::optional<EvalReport> report;  // when qrels are configured
};

/// Loads the index, lexicon, topics and qrels named by the config, runs the
/// method and evaluates. Throws DataError for unreadable inputs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Loads whichever gloss source the config names; null when none is set.
std::optional<GlossLexicon> load_lexicon(const ExperimentConfig& cfg);
Analyzer make_analyzer(const ExperimentConfig& cfg);

}  // namespace glossqe
