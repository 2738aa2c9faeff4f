#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "glossqe/index.hpp"
#include "glossqe/textproc.hpp"

namespace glossqe {

/// Lemma -> glosses of every synset containing it. Lemmas are lowercase,
/// with multiword lemmas joined by underscores ("lyme_disease").
class GlossLexicon {
public:
    /// Appends a gloss; the lemma is lowercased and spaces become underscores.
    void add(std::string_view lemma, std::string gloss);
    /// Empty when the lemma is unknown.
    std::vector<std::string_view> glosses(std::string_view lemma) const;
    bool contains(std::string_view lemma) const;
    std::size_t size() const { return entries_.size(); }
    std::vector<std::string> lemmas() const;

private:
    friend GlossLexicon load_wordnet(const std::string& dir);

    std::vector<std::string> glosses_;
    std::unordered_map<std::string, std::vector<std::uint32_t>, StringHash, std::equal_to<>> entries_;
};

/// Reads WordNet 3.x `index.{noun,verb,adj,adv}` and the matching `data.*`
/// files. Each lemma gets the gloss of every synset listed for it in any of
/// the four index files (noun, verb, adj, adv order). The gloss is the text
/// after the `|` separator, example sentences included.
///
/// Synsets are located by the offset field that starts each data line, so
/// files with CRLF line endings load too. Throws ParseError naming the file
/// and line for a missing file, malformed line, or dangling offset.
GlossLexicon load_wordnet(const std::string& dir);

/// `lemma<TAB>gloss` lines; repeated lemmas accumulate glosses. Blank lines
/// are skipped. Throws ParseError with the line number on a missing tab.
GlossLexicon load_tsv_lexicon(std::istream& in);
GlossLexicon load_tsv_lexicon(const std::string& path);

/// Analyzed vocabulary of a lemma's glosses, sorted and duplicate-free.
struct GlossWordSet {
    std::string owner;
    std::vector<std::string> words;
};

enum class UnitKind { Phrase, Word };

struct QueryUnit {
    UnitKind kind = UnitKind::Word;
    std::string text;  // surface words joined by a space
    GlossWordSet gloss;
};

enum class OverlapMode { Dice, Jaccard };

/// Union of the lemma's analyzed glosses; empty when the lemma is unknown.
GlossWordSet gloss_set(const GlossLexicon& lex, std::string_view lemma, const Analyzer& analyzer);

/// Gloss set of an index term, looked up through its most frequent surface
/// form, falling back to the stem itself.
GlossWordSet term_gloss_set(const GlossLexicon& lex, const InvertedIndex& index, TermId term,
                            const Analyzer& analyzer);

/// Greedy left-to-right pairing: words i and i+1 form a phrase unit when
/// "w_i_w_{i+1}" is a lexicon lemma; otherwise word i stands alone.
std::vector<QueryUnit> detect_units(std::span<const std::string> query_words, const GlossLexicon& lex,
                                    const Analyzer& analyzer);

/// Jaccard |A∩B| / (|A|+|B|-|A∩B|) or Dice 2|A∩B| / (|A|+|B|); 0 when both are empty.
double rel(const GlossWordSet& a, const GlossWordSet& b, OverlapMode mode);

std::size_t intersection_size(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace glossqe
