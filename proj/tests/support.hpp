#pragma once
// Shared fixtures: paths into the source tree and the bundled mini collection.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "glossqe/corpus.hpp"
#include "glossqe/expand.hpp"
#include "glossqe/index.hpp"
#include "glossqe/wordnet.hpp"

namespace testing {

inline std::string source_path(const std::string& rel) { return std::string(GLOSSQE_SOURCE_DIR) + "/" + rel; }
inline std::string mini_path(const std::string& name) { return source_path("data/minicorpus/" + name); }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// scratch directory under the build tree, wiped on first use per process
inline std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::path(GLOSSQE_BINARY_DIR) / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct Mini {
    glossqe::Analyzer analyzer;
    std::vector<glossqe::Document> docs;
    glossqe::InvertedIndex index;
    std::vector<glossqe::Topic> topics;
    glossqe::QrelSet qrels;
    glossqe::GlossLexicon lexicon;

    glossqe::ExpansionContext ctx() const { return {index, analyzer, &lexicon}; }
};

// built once per test binary
inline const Mini& mini() {
    static const Mini m = [] {
        Mini m;
        m.docs = glossqe::parse_trec_docs(slurp(mini_path("docs.trec")));
        m.index = glossqe::InvertedIndex::build(m.docs, m.analyzer);
        m.topics = glossqe::parse_topics(slurp(mini_path("topics.txt")));
        std::istringstream q(slurp(mini_path("qrels.txt")));
        m.qrels = glossqe::parse_qrels(q);
        m.lexicon = glossqe::load_tsv_lexicon(mini_path("lexicon.tsv"));
        return m;
    }();
    return m;
}

}  // namespace testing
