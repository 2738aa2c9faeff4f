#include "glossqe/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "glossqe/error.hpp"

namespace glossqe {
namespace {

std::string normalize_lemma(std::string_view lemma) {
    std::string out(lemma);
    for (auto& c : out) {
        if (c == ' ') c = '_';
        else c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        auto b = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > b) out.push_back(line.substr(b, i - b));
    }
    return out;
}

template <typename T>
bool to_number(std::string_view s, T& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("missing WordNet file " + path);
    return in;
}

}  // namespace

void GlossLexicon::add(std::string_view lemma, std::string gloss) {
    glosses_.push_back(std::move(gloss));
    entries_[normalize_lemma(lemma)].push_back(static_cast<std::uint32_t>(glosses_.size() - 1));
}

std::vector<std::string_view> GlossLexicon::glosses(std::string_view lemma) const {
    std::vector<std::string_view> out;
    auto it = entries_.find(normalize_lemma(lemma));
    if (it != entries_.end())
        for (auto id : it->second) out.emplace_back(glosses_[id]);
    return out;
}

bool GlossLexicon::contains(std::string_view lemma) const {
    return entries_.find(normalize_lemma(lemma)) != entries_.end();
}

std::vector<std::string> GlossLexicon::lemmas() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [lemma, _] : entries_) out.push_back(lemma);
    std::sort(out.begin(), out.end());
    return out;
}

GlossLexicon load_wordnet(const std::string& dir) {
    static constexpr std::string_view kPos[] = {"noun", "verb", "adj", "adv"};
    GlossLexicon lex;
    for (auto pos : kPos) {
        const std::string data_path = dir + "/data." + std::string(pos);
        const std::string index_path = dir + "/index." + std::string(pos);
        auto data = open_or_throw(data_path);
        auto index = open_or_throw(index_path);

        std::unordered_map<std::uint64_t, std::uint32_t> synset_gloss;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(data, line)) {
            ++lineno;
            std::string_view l = line;
            if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
            if (l.empty() || l.front() == ' ') continue;  // license header
            auto sp = l.find(' ');
            std::uint64_t offset = 0;
            auto bar = l.find('|');
            if (sp == std::string_view::npos || !to_number(l.substr(0, sp), offset) || bar == std::string_view::npos)
                throw ParseError(data_path + ":" + std::to_string(lineno) + ": malformed synset line");
            lex.glosses_.emplace_back(trim(l.substr(bar + 1)));
            synset_gloss[offset] = static_cast<std::uint32_t>(lex.glosses_.size() - 1);
        }

        lineno = 0;
        while (std::getline(index, line)) {
            ++lineno;
            std::string_view l = line;
            if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
            if (l.empty() || l.front() == ' ') continue;
            auto f = fields(l);
            auto bad = [&](const std::string& what) {
                return ParseError(index_path + ":" + std::to_string(lineno) + ": " + what);
            };
            std::size_t synset_cnt = 0;
            std::size_t p_cnt = 0;
            if (f.size() < 4 || !to_number(f[2], synset_cnt) || !to_number(f[3], p_cnt))
                throw bad("malformed index line");
            const std::size_t first_offset = 4 + p_cnt + 2;
            if (f.size() != first_offset + synset_cnt) throw bad("field count does not match synset count");
            auto& ids = lex.entries_[normalize_lemma(f[0])];
            for (std::size_t i = 0; i < synset_cnt; ++i) {
                std::uint64_t offset = 0;
                if (!to_number(f[first_offset + i], offset)) throw bad("malformed offset '" + std::string(f[first_offset + i]) + "'");
                auto it = synset_gloss.find(offset);
                if (it == synset_gloss.end())
                    throw bad("offset " + std::string(f[first_offset + i]) + " not found in " + data_path);
                ids.push_back(it->second);
            }
        }
    }
    return lex;
}

GlossLexicon load_tsv_lexicon(std::istream& in) {
    GlossLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("lexicon line " + std::to_string(lineno) + ": missing tab separator");
        auto lemma = trim(std::string_view(line).substr(0, tab));
        if (lemma.empty()) throw ParseError("lexicon line " + std::to_string(lineno) + ": empty lemma");
        lex.add(lemma, std::string(trim(std::string_view(line).substr(tab + 1))));
    }
    return lex;
}

GlossLexicon load_tsv_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon " + path);
    return load_tsv_lexicon(in);
}

GlossWordSet gloss_set(const GlossLexicon& lex, std::string_view lemma, const Analyzer& analyzer) {
    GlossWordSet set{std::string(lemma), {}};
    for (auto gloss : lex.glosses(lemma)) {
        auto terms = analyzer.analyze(gloss);
        set.words.insert(set.words.end(), std::make_move_iterator(terms.begin()), std::make_move_iterator(terms.end()));
    }
    std::sort(set.words.begin(), set.words.end());
    set.words.erase(std::unique(set.words.begin(), set.words.end()), set.words.end());
    return set;
}

GlossWordSet term_gloss_set(const GlossLexicon& lex, const InvertedIndex& index, TermId term,
                            const Analyzer& analyzer) {
    const auto& surface = index.surface(term);
    if (lex.contains(surface)) return gloss_set(lex, surface, analyzer);
    return gloss_set(lex, index.term(term), analyzer);
}

std::vector<QueryUnit> detect_units(std::span<const std::string> query_words, const GlossLexicon& lex,
                                    const Analyzer& analyzer) {
    std::vector<QueryUnit> units;
    std::size_t i = 0;
    while (i < query_words.size()) {
        if (i + 1 < query_words.size()) {
            std::string phrase = query_words[i] + "_" + query_words[i + 1];
            if (lex.contains(phrase)) {
                units.push_back({UnitKind::Phrase, query_words[i] + " " + query_words[i + 1],
                                 gloss_set(lex, phrase, analyzer)});
                i += 2;
                continue;
            }
        }
        units.push_back({UnitKind::Word, query_words[i], gloss_set(lex, query_words[i], analyzer)});
        ++i;
    }
    return units;
}

std::size_t intersection_size(std::span<const std::string> a, std::span<const std::string> b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

double rel(const GlossWordSet& a, const GlossWordSet& b, OverlapMode mode) {
    const auto ca = static_cast<double>(a.words.size());
    const auto cb = static_cast<double>(b.words.size());
    if (ca + cb == 0.0) return 0.0;
    const auto cab = static_cast<double>(intersection_size(a.words, b.words));
    if (mode == OverlapMode::Jaccard) return cab / (ca + cb - cab);
    return 2.0 * cab / (ca + cb);
}

}  // namespace glossqe
