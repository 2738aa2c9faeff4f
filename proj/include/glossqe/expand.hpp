#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glossqe/corpus.hpp"
#include "glossqe/index.hpp"
#include "glossqe/retrieval.hpp"
#include "glossqe/textproc.hpp"
#include "glossqe/wordnet.hpp"

namespace glossqe {

enum class Method { Baseline, PWnet, NoWnet, FnPw, Kld, Rm3, KldLca, KlWnet };

std::string_view method_name(Method m);
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();
bool needs_lexicon(Method m);

/// Parameters of one expansion method. Fields a method does not use are ignored.
struct ExpansionConfig {
    std::size_t prd_docs = 10;  // D
    std::size_t num_terms = 60; // T
    double beta = 2.0;          // multiplier of the original-term weight
    double alpha = 0.3;         // KLWNET mixture weight of the P-WNET score
    OverlapMode mode = OverlapMode::Dice;
    double mu = 2500.0;         // RM3 Dirichlet prior
    double lambda = 0.5;        // RM3 weight of the original query model

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    bool operator==(const ExpansionConfig&) const = default;
};

/// Published settings: pwnet/nownet/fnpw D=10 T=60 β=2, kld D=10 T=40 β=1,
/// rm3 D=50 T=50 μ=2500 λ=0.5, kldlca D=50 T=40 β=1, klwnet α=0.3.
ExpansionConfig default_config(Method m);

/// Per-method configuration; KLWNET reads the pwnet and kldlca entries for
/// its constituents.
struct ExpansionSettings {
    ExpansionConfig pwnet = default_config(Method::PWnet);
    ExpansionConfig nownet = default_config(Method::NoWnet);
    ExpansionConfig fnpw = default_config(Method::FnPw);
    ExpansionConfig kld = default_config(Method::Kld);
    ExpansionConfig rm3 = default_config(Method::Rm3);
    ExpansionConfig kldlca = default_config(Method::KldLca);
    ExpansionConfig klwnet = default_config(Method::KlWnet);

    ExpansionConfig& operator[](Method m);
    const ExpansionConfig& operator[](Method m) const;
    bool operator==(const ExpansionSettings&) const = default;
};

/// A topic title after analysis.
struct TopicQuery {
    TopicId id = 0;
    std::vector<std::string> words;  // stopword-free surface words, title order
    std::vector<std::string> terms;  // their stems, title order
    /// Distinct terms with their title frequency, in order of first appearance.
    std::vector<std::pair<std::string, std::uint32_t>> term_counts;

    WeightedQuery original() const;
};

TopicQuery prepare_topic(const Topic& topic, const Analyzer& analyzer);

struct PseudoRelevantDocs {
    TopicId topic = 0;
    std::vector<ScoredDoc> docs;  // Sim(d,Q), non-increasing
    double max_sim = 0.0;
};

/// Top-D documents of the unexpanded title query.
PseudoRelevantDocs retrieve_prd(const InvertedIndex& index, const TopicQuery& query, std::size_t prd_docs);

/// max(0.0001, log10((N - N_t + 0.5) / (N_t + 0.5)))
double robertson_idf(std::uint64_t num_docs, std::uint64_t doc_freq);

struct ScoredTerm {
    std::string term;
    double score = 0.0;
    bool operator==(const ScoredTerm&) const = default;
};

/// Candidate scores of one method on one topic.
struct Selection {
    std::vector<ScoredTerm> candidates;  // every PRD term, score descending then term
    std::vector<ScoredTerm> selected;    // the chosen expansion terms with their raw scores
    double max_score = 0.0;              // over all candidates
};

struct ScoredCandidate {
    std::string term;
    std::vector<double> per_unit;  // s(t, q_i)
    double score = 0.0;            // S(t) = Σ s / (1 + s)
};

/// Everything the expansion methods read. The lexicon may be null for
/// methods that do not consult it.
struct ExpansionContext {
    const InvertedIndex& index;
    const Analyzer& analyzer;
    const GlossLexicon* lexicon = nullptr;
};

/// Σ over PRD documents containing the term of Sim(d,Q) / max Sim. Each
/// ratio is rounded to a 2^-32 grid, which makes the factor depend only on
/// the ratios of the retrieval scores.
double prd_similarity_mass(const InvertedIndex& index, const PseudoRelevantDocs& prd, TermId term);

/// Gloss-overlap score of a PRD term against the query units.
/// Throws ContractError when the term occurs in no PRD document.
ScoredCandidate pwnet_score(const ExpansionContext& ctx, TermId term, const std::vector<QueryUnit>& units,
                            const PseudoRelevantDocs& prd, OverlapMode mode);

/// Distinct terms of the PRD documents, ascending term id.
std::vector<TermId> prd_vocabulary(const InvertedIndex& index, const PseudoRelevantDocs& prd);

Selection select_pwnet(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                       const ExpansionConfig& cfg);
Selection select_nownet(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                        const ExpansionConfig& cfg);
Selection select_fnpw(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                      const ExpansionConfig& cfg);
/// p_R(t) * log2(p_R(t) / p_C(t)) over the PRD vocabulary.
Selection select_kld(const ExpansionContext& ctx, const PseudoRelevantDocs& prd, const ExpansionConfig& cfg);
/// KLD pool of 2T terms reranked by LCA belief; the top T keep their KLD scores.
Selection select_kldlca(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                        const ExpansionConfig& cfg);

/// Local context analysis belief of a candidate:
///   Π_i (δ + log10(co(t,q_i)) * idf_t / log10(D')) ^ idf_{q_i},  δ = 0.1
/// with co(t,q_i) = Σ_d tf(t,d) tf(q_i,d), idf_x = min(1, log10(N/N_x)/5),
/// D' = max(|PRD|, 2). A query term with co = 0 contributes δ^{idf_{q_i}}.
double lca_belief(const InvertedIndex& index, const TopicQuery& q, const PseudoRelevantDocs& prd, TermId candidate);

inline constexpr double kLcaDelta = 0.1;

struct ExpandedQuery {
    TopicId topic = 0;
    Method method = Method::Baseline;
    std::vector<WeightedTerm> terms;  // weight descending, then term

    WeightedQuery to_weighted() const { return {topic, terms}; }
    const WeightedTerm* find(std::string_view term) const;
    bool operator==(const ExpandedQuery&) const = default;
};

/// (1 + ln tf) / (1 + max ln tf) for each original term.
std::vector<ScoredTerm> original_term_weights(const TopicQuery& q);

/// Expansion terms get score / max_score, original terms β times their
/// normalized title weight; a term in both lists gets the sum.
ExpandedQuery assemble_query(const TopicQuery& q, const std::vector<ScoredTerm>& selected, double max_score,
                             double beta, Method method);

/// Mixes the normalized P-WNET and KLDLCA expansion scores as
/// α·score_1 + (1-α)·score_2 (0 for a method that did not pick the term).
/// Original title terms are not mixed; they keep their normalized title
/// weight with multiplier 1.
ExpandedQuery combine_klwnet(const TopicQuery& q, const Selection& pwnet, const Selection& kldlca, double alpha);

/// Relevance-model feedback: weights are p'(t) / max p' with
/// p'(t) = λ p_mle(t|Q) + (1-λ) p(t|R) over the top-T relevance-model terms
/// and the query terms.
ExpandedQuery rm3_from_prd(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                           const ExpansionConfig& cfg);

/// Relevance model p(t|R) for the given terms (Dirichlet-smoothed document
/// models weighted by normalized query likelihood).
std::vector<double> relevance_model(const InvertedIndex& index, const TopicQuery& q,
                                    const PseudoRelevantDocs& prd, double mu, std::span<const TermId> terms);

/// Runs a method for one topic from its own PRD retrieval. Methods fall
/// back to the original query when the PRD is empty. Throws ContractError
/// when a lexicon-based method gets no lexicon.
ExpandedQuery expand(const ExpansionContext& ctx, Method method, const TopicQuery& q, const ExpansionSettings& settings);

/// P-WNET with a caller-supplied PRD.
ExpandedQuery pwnet_from_prd(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                             const ExpansionConfig& cfg);

/// TSV lines `topic<TAB>term<TAB>weight`.
void write_expanded(std::ostream& out, const std::vector<ExpandedQuery>& queries);

}  // namespace glossqe
