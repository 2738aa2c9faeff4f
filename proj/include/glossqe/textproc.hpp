#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace glossqe {

/// Splits on every non-alphanumeric byte and lowercases ASCII letters.
/// Empty tokens and all-digit tokens longer than 12 characters are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Porter (1980) suffix stripper, following the reference C implementation
/// distributed by Martin Porter. Input must be lowercase.
std::string porter_stem(std::string_view word);

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

class StopwordList {
public:
    StopwordList() : words_(std::make_shared<const StringSet>()) {}
    explicit StopwordList(StringSet words)
        : words_(std::make_shared<const StringSet>(std::move(words))) {}

    /// The bundled English list (SMART + Glasgow union).
    static StopwordList english();
    /// One word per line, `#` comment lines ignored. Throws std::runtime_error.
    static StopwordList from_file(const std::string& path);
    static StopwordList parse(std::string_view content);

    bool contains(std::string_view w) const { return words_->find(w) != words_->end(); }
    std::size_t size() const { return words_->size(); }
    const StringSet& words() const { return *words_; }

private:
    std::shared_ptr<const StringSet> words_;
};

struct AnalyzerConfig {
    StopwordList stopwords = StopwordList::english();
    bool stemming = true;
};

/// A surface word paired with the index term it analyzes to.
struct AnalyzedToken {
    std::string surface;
    std::string term;
};

class Analyzer {
public:
    Analyzer() = default;
    explicit Analyzer(AnalyzerConfig cfg) : cfg_(std::move(cfg)) {}

    /// tokenize -> drop stopwords (on the surface form) -> stem.
    std::vector<std::string> analyze(std::string_view text) const;
    std::vector<AnalyzedToken> analyze_with_surface(std::string_view text) const;
    /// Tokenized surface words with stopwords removed, unstemmed.
    std::vector<std::string> content_words(std::string_view text) const;

    std::string term_for(std::string_view surface) const {
        return cfg_.stemming ? porter_stem(surface) : std::string(surface);
    }
    bool is_stopword(std::string_view w) const { return cfg_.stopwords.contains(w); }
    const AnalyzerConfig& config() const { return cfg_; }

private:
    AnalyzerConfig cfg_;
};

}  // namespace glossqe
