#include "glossqe/expand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "glossqe/error.hpp"

namespace glossqe {
namespace {

constexpr double kSimGrid = 4294967296.0;  // 2^32

void sort_by_score(std::vector<ScoredTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
}

// `candidates` must already be sorted.
std::vector<ScoredTerm> top_positive(const std::vector<ScoredTerm>& candidates, std::size_t n) {
    std::vector<ScoredTerm> out;
    for (const auto& c : candidates) {
        if (out.size() == n || c.score <= 0.0) break;
        out.push_back(c);
    }
    return out;
}

Selection finish(std::vector<ScoredTerm> candidates, std::size_t num_terms) {
    Selection sel;
    sort_by_score(candidates);
    sel.max_score = candidates.empty() ? 0.0 : std::max(0.0, candidates.front().score);
    sel.selected = top_positive(candidates, num_terms);
    sel.candidates = std::move(candidates);
    return sel;
}

double normalized_sim(const ScoredDoc& d, double max_sim) {
    return std::nearbyint(d.score / max_sim * kSimGrid) / kSimGrid;
}

// prd_similarity_mass for every PRD term at once; same summation order.
std::map<TermId, double> prd_masses(const InvertedIndex& index, const PseudoRelevantDocs& prd) {
    std::map<TermId, double> mass;
    for (const auto& d : prd.docs) {
        const double w = normalized_sim(d, prd.max_sim);
        for (const auto& dt : index.doc_terms(d.doc)) mass[dt.term] += w;
    }
    return mass;
}

const GlossLexicon& require_lexicon(const ExpansionContext& ctx, std::string_view what) {
    if (!ctx.lexicon) throw ContractError(std::string(what) + " needs a gloss lexicon");
    return *ctx.lexicon;
}

ExpandedQuery make_query(TopicId topic, Method method, const std::map<std::string, double>& weights) {
    ExpandedQuery out{topic, method, {}};
    for (const auto& [term, w] : weights)
        if (w > 0.0) out.terms.push_back({term, w});
    std::sort(out.terms.begin(), out.terms.end(), [](const WeightedTerm& a, const WeightedTerm& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.term < b.term;
    });
    return out;
}

ExpandedQuery passthrough(const TopicQuery& q, Method method) {
    std::map<std::string, double> weights;
    for (const auto& [term, tf] : q.term_counts) weights[term] = tf;
    return make_query(q.id, method, weights);
}

double lca_idf(std::uint64_t num_docs, std::uint64_t df) {
    return std::min(1.0, std::log10(static_cast<double>(num_docs) / static_cast<double>(df)) / 5.0);
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Baseline: return "baseline";
        case Method::PWnet: return "pwnet";
        case Method::NoWnet: return "nownet";
        case Method::FnPw: return "fnpw";
        case Method::Kld: return "kld";
        case Method::Rm3: return "rm3";
        case Method::KldLca: return "kldlca";
        case Method::KlWnet: return "klwnet";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (auto m : all_methods())
        if (method_name(m) == name) return m;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods{Method::Baseline, Method::PWnet, Method::NoWnet, Method::FnPw,
                                             Method::Kld,      Method::Rm3,   Method::KldLca, Method::KlWnet};
    return methods;
}

bool needs_lexicon(Method m) {
    return m == Method::PWnet || m == Method::FnPw || m == Method::KlWnet;
}

void ExpansionConfig::validate() const {
    if (prd_docs < 1) throw std::invalid_argument("D must be >= 1");
    if (num_terms < 1) throw std::invalid_argument("T must be >= 1");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
}

ExpansionConfig default_config(Method m) {
    ExpansionConfig c;
    switch (m) {
        case Method::Baseline:
        case Method::PWnet:
        case Method::NoWnet:
        case Method::FnPw:
        case Method::KlWnet:
            break;
        case Method::Kld:
            c.prd_docs = 10;
            c.num_terms = 40;
            c.beta = 1.0;
            break;
        case Method::Rm3:
            c.prd_docs = 50;
            c.num_terms = 50;
            c.beta = 1.0;
            break;
        case Method::KldLca:
            c.prd_docs = 50;
            c.num_terms = 40;
            c.beta = 1.0;
            break;
    }
    return c;
}

ExpansionConfig& ExpansionSettings::operator[](Method m) {
    switch (m) {
        case Method::PWnet: return pwnet;
        case Method::NoWnet: return nownet;
        case Method::FnPw: return fnpw;
        case Method::Kld: return kld;
        case Method::Rm3: return rm3;
        case Method::KldLca: return kldlca;
        case Method::KlWnet:
        case Method::Baseline: return klwnet;
    }
    return klwnet;
}

const ExpansionConfig& ExpansionSettings::operator[](Method m) const {
    return const_cast<ExpansionSettings&>(*this)[m];
}

WeightedQuery TopicQuery::original() const {
    WeightedQuery wq{id, {}};
    for (const auto& [term, tf] : term_counts) wq.terms.push_back({term, static_cast<double>(tf)});
    return wq;
}

TopicQuery prepare_topic(const Topic& topic, const Analyzer& analyzer) {
    TopicQuery q;
    q.id = topic.id;
    for (auto& tok : analyzer.analyze_with_surface(topic.title)) {
        auto it = std::find_if(q.term_counts.begin(), q.term_counts.end(),
                               [&](const auto& tc) { return tc.first == tok.term; });
        if (it == q.term_counts.end())
            q.term_counts.emplace_back(tok.term, 1);
        else
            ++it->second;
        q.words.push_back(std::move(tok.surface));
        q.terms.push_back(std::move(tok.term));
    }
    return q;
}

PseudoRelevantDocs retrieve_prd(const InvertedIndex& index, const TopicQuery& query, std::size_t prd_docs) {
    PseudoRelevantDocs prd;
    prd.topic = query.id;
    for (auto& d : search(index, query.original(), prd_docs)) {
        // Sim(d,Q) must be positive for the max-normalization to make sense.
        if (d.score <= 0.0) break;
        prd.docs.push_back(std::move(d));
    }
    prd.max_sim = prd.docs.empty() ? 0.0 : prd.docs.front().score;
    return prd;
}

double robertson_idf(std::uint64_t num_docs, std::uint64_t doc_freq) {
    const double N = static_cast<double>(num_docs);
    const double Nt = static_cast<double>(doc_freq);
    return std::max(0.0001, std::log10((N - Nt + 0.5) / (Nt + 0.5)));
}

double prd_similarity_mass(const InvertedIndex& index, const PseudoRelevantDocs& prd, TermId term) {
    double mass = 0.0;
    for (const auto& d : prd.docs)
        if (index.tf(d.doc, term) > 0) mass += normalized_sim(d, prd.max_sim);
    return mass;
}

std::vector<TermId> prd_vocabulary(const InvertedIndex& index, const PseudoRelevantDocs& prd) {
    std::vector<TermId> vocab;
    for (const auto& d : prd.docs)
        for (const auto& dt : index.doc_terms(d.doc)) vocab.push_back(dt.term);
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    return vocab;
}

namespace {

ScoredCandidate score_with_mass(const ExpansionContext& ctx, TermId term, const std::vector<QueryUnit>& units,
                                double mass, OverlapMode mode) {
    ScoredCandidate c;
    c.term = ctx.index.term(term);
    const double idf = robertson_idf(ctx.index.num_docs(), ctx.index.df(term));
    const auto gloss = term_gloss_set(*ctx.lexicon, ctx.index, term, ctx.analyzer);
    for (const auto& u : units) {
        const double s = rel(gloss, u.gloss, mode) * idf * mass;
        c.per_unit.push_back(s);
        c.score += s / (1.0 + s);
    }
    return c;
}

}  // namespace

ScoredCandidate pwnet_score(const ExpansionContext& ctx, TermId term, const std::vector<QueryUnit>& units,
                            const PseudoRelevantDocs& prd, OverlapMode mode) {
    require_lexicon(ctx, "pwnet");
    const double mass = prd_similarity_mass(ctx.index, prd, term);
    if (mass <= 0.0) throw ContractError("pwnet_score: term '" + ctx.index.term(term) + "' is not in the PRD");
    return score_with_mass(ctx, term, units, mass, mode);
}

Selection select_pwnet(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                       const ExpansionConfig& cfg) {
    const auto& lex = require_lexicon(ctx, "pwnet");
    const auto units = detect_units(q.words, lex, ctx.analyzer);
    std::vector<ScoredTerm> candidates;
    for (const auto& [term, mass] : prd_masses(ctx.index, prd)) {
        auto c = score_with_mass(ctx, term, units, mass, cfg.mode);
        candidates.push_back({std::move(c.term), c.score});
    }
    return finish(std::move(candidates), cfg.num_terms);
}

Selection select_nownet(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                        const ExpansionConfig& cfg) {
    // Without the gloss factor s(t,q_i) is the same for every unit.
    const double num_units = ctx.lexicon
                                 ? static_cast<double>(detect_units(q.words, *ctx.lexicon, ctx.analyzer).size())
                                 : static_cast<double>(q.words.size());
    std::vector<ScoredTerm> candidates;
    for (const auto& [term, mass] : prd_masses(ctx.index, prd)) {
        const double s = robertson_idf(ctx.index.num_docs(), ctx.index.df(term)) * mass;
        candidates.push_back({ctx.index.term(term), num_units * (s / (1.0 + s))});
    }
    return finish(std::move(candidates), cfg.num_terms);
}

Selection select_fnpw(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                      const ExpansionConfig& cfg) {
    const auto& lex = require_lexicon(ctx, "fnpw");
    const auto units = detect_units(q.words, lex, ctx.analyzer);
    std::vector<ScoredTerm> candidates;
    for (auto term : prd_vocabulary(ctx.index, prd)) {
        const auto gloss = term_gloss_set(lex, ctx.index, term, ctx.analyzer);
        double score = 0.0;
        for (const auto& u : units) score += rel(gloss, u.gloss, cfg.mode);
        candidates.push_back({ctx.index.term(term), score});
    }
    return finish(std::move(candidates), cfg.num_terms);
}

Selection select_kld(const ExpansionContext& ctx, const PseudoRelevantDocs& prd, const ExpansionConfig& cfg) {
    std::map<TermId, std::uint64_t> prd_tf;
    std::uint64_t prd_tokens = 0;
    for (const auto& d : prd.docs) {
        prd_tokens += ctx.index.doc_length(d.doc);
        for (const auto& dt : ctx.index.doc_terms(d.doc)) prd_tf[dt.term] += dt.tf;
    }
    const double coll_tokens = static_cast<double>(ctx.index.total_tokens());
    std::vector<ScoredTerm> candidates;
    for (const auto& [term, tf] : prd_tf) {
        const double p_r = static_cast<double>(tf) / static_cast<double>(prd_tokens);
        const double p_c = static_cast<double>(ctx.index.cf(term)) / coll_tokens;
        candidates.push_back({ctx.index.term(term), p_r * std::log2(p_r / p_c)});
    }
    return finish(std::move(candidates), cfg.num_terms);
}

double lca_belief(const InvertedIndex& index, const TopicQuery& q, const PseudoRelevantDocs& prd, TermId candidate) {
    const auto N = index.num_docs();
    const double idf_t = lca_idf(N, index.df(candidate));
    const double log_docs = std::log10(static_cast<double>(std::max<std::size_t>(prd.docs.size(), 2)));
    double belief = 1.0;
    for (const auto& [qterm, _] : q.term_counts) {
        auto qid = index.term_id(qterm);
        if (!qid) continue;
        double co = 0.0;
        for (const auto& d : prd.docs)
            co += static_cast<double>(index.tf(d.doc, candidate)) * static_cast<double>(index.tf(d.doc, *qid));
        const double factor = co > 0.0 ? kLcaDelta + std::log10(co) * idf_t / log_docs : kLcaDelta;
        belief *= std::pow(factor, lca_idf(N, index.df(*qid)));
    }
    return belief;
}

Selection select_kldlca(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                        const ExpansionConfig& cfg) {
    ExpansionConfig pool_cfg = cfg;
    pool_cfg.num_terms = 2 * cfg.num_terms;
    Selection kld = select_kld(ctx, prd, pool_cfg);

    struct Ranked {
        ScoredTerm term;
        double belief;
    };
    std::vector<Ranked> pool;
    for (const auto& t : kld.selected)
        pool.push_back({t, lca_belief(ctx.index, q, prd, *ctx.index.term_id(t.term))});
    // pool is in KLD order, so a stable sort keeps KLD order among equal beliefs
    std::stable_sort(pool.begin(), pool.end(), [](const Ranked& a, const Ranked& b) { return a.belief > b.belief; });

    kld.selected.clear();
    for (std::size_t i = 0; i < pool.size() && i < cfg.num_terms; ++i) kld.selected.push_back(pool[i].term);
    return kld;
}

std::vector<double> relevance_model(const InvertedIndex& index, const TopicQuery& q, const PseudoRelevantDocs& prd,
                                    double mu, std::span<const TermId> terms) {
    const double coll = static_cast<double>(index.total_tokens());
    auto p_doc = [&](DocId d, TermId t) {
        return (static_cast<double>(index.tf(d, t)) + mu * static_cast<double>(index.cf(t)) / coll) /
               (static_cast<double>(index.doc_length(d)) + mu);
    };

    // p(Q|d) in log space, normalized over the PRD
    std::vector<double> log_ql;
    for (const auto& d : prd.docs) {
        double lq = 0.0;
        for (const auto& [qterm, tf] : q.term_counts)
            if (auto id = index.term_id(qterm)) lq += tf * std::log(p_doc(d.doc, *id));
        log_ql.push_back(lq);
    }
    std::vector<double> doc_weight(prd.docs.size(), 0.0);
    if (!log_ql.empty()) {
        const double top = *std::max_element(log_ql.begin(), log_ql.end());
        double z = 0.0;
        for (std::size_t i = 0; i < log_ql.size(); ++i) z += doc_weight[i] = std::exp(log_ql[i] - top);
        for (auto& w : doc_weight) w /= z;
    }

    std::vector<double> out;
    out.reserve(terms.size());
    for (auto t : terms) {
        double p = 0.0;
        for (std::size_t i = 0; i < prd.docs.size(); ++i) p += doc_weight[i] * p_doc(prd.docs[i].doc, t);
        out.push_back(p);
    }
    return out;
}

ExpandedQuery rm3_from_prd(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                           const ExpansionConfig& cfg) {
    if (prd.docs.empty()) return passthrough(q, Method::Rm3);
    const auto vocab = prd_vocabulary(ctx.index, prd);
    const auto p_rel = relevance_model(ctx.index, q, prd, cfg.mu, vocab);

    std::vector<ScoredTerm> rm1;
    for (std::size_t i = 0; i < vocab.size(); ++i) rm1.push_back({ctx.index.term(vocab[i]), p_rel[i]});
    sort_by_score(rm1);
    rm1.resize(std::min(rm1.size(), cfg.num_terms));

    std::map<std::string, double> p_model;
    for (const auto& t : rm1) p_model[t.term] = (1.0 - cfg.lambda) * t.score;

    double qlen = 0.0;
    for (const auto& [_, tf] : q.term_counts) qlen += tf;
    for (const auto& [term, tf] : q.term_counts) {
        double p_r = 0.0;
        if (!p_model.count(term)) {
            if (auto id = ctx.index.term_id(term)) {
                const TermId one[] = {*id};
                p_r = relevance_model(ctx.index, q, prd, cfg.mu, one).front();
            }
            p_model[term] = (1.0 - cfg.lambda) * p_r;
        }
        p_model[term] += cfg.lambda * tf / qlen;
    }

    double top = 0.0;
    for (const auto& [_, p] : p_model) top = std::max(top, p);
    if (top <= 0.0) return passthrough(q, Method::Rm3);
    for (auto& [_, p] : p_model) p /= top;
    return make_query(q.id, Method::Rm3, p_model);
}

const WeightedTerm* ExpandedQuery::find(std::string_view term) const {
    for (const auto& t : terms)
        if (t.term == term) return &t;
    return nullptr;
}

std::vector<ScoredTerm> original_term_weights(const TopicQuery& q) {
    double max_log = 0.0;
    for (const auto& [_, tf] : q.term_counts) max_log = std::max(max_log, std::log(static_cast<double>(tf)));
    std::vector<ScoredTerm> out;
    for (const auto& [term, tf] : q.term_counts)
        out.push_back({term, (1.0 + std::log(static_cast<double>(tf))) / (1.0 + max_log)});
    return out;
}

ExpandedQuery assemble_query(const TopicQuery& q, const std::vector<ScoredTerm>& selected, double max_score,
                             double beta, Method method) {
    if (!selected.empty() && !(max_score > 0.0))
        throw ContractError("assemble_query: expansion scores need a positive maximum");
    std::map<std::string, double> weights;
    for (const auto& t : selected) weights[t.term] += t.score / max_score;
    for (const auto& t : original_term_weights(q)) weights[t.term] += beta * t.score;
    return make_query(q.id, method, weights);
}

ExpandedQuery combine_klwnet(const TopicQuery& q, const Selection& pwnet, const Selection& kldlca, double alpha) {
    std::map<std::string, double> mixed;
    for (const auto& t : pwnet.selected) mixed[t.term] += alpha * (t.score / pwnet.max_score);
    for (const auto& t : kldlca.selected) mixed[t.term] += (1.0 - alpha) * (t.score / kldlca.max_score);
    for (const auto& t : original_term_weights(q)) mixed[t.term] = t.score;
    return make_query(q.id, Method::KlWnet, mixed);
}

ExpandedQuery pwnet_from_prd(const ExpansionContext& ctx, const TopicQuery& q, const PseudoRelevantDocs& prd,
                             const ExpansionConfig& cfg) {
    if (prd.docs.empty()) return passthrough(q, Method::PWnet);
    auto sel = select_pwnet(ctx, q, prd, cfg);
    if (sel.selected.empty()) return passthrough(q, Method::PWnet);
    return assemble_query(q, sel.selected, sel.max_score, cfg.beta, Method::PWnet);
}

ExpandedQuery expand(const ExpansionContext& ctx, Method method, const TopicQuery& q,
                     const ExpansionSettings& settings) {
    if (needs_lexicon(method)) require_lexicon(ctx, method_name(method));
    const auto& cfg = settings[method];
    switch (method) {
        case Method::Baseline:
            return passthrough(q, method);
        case Method::PWnet:
            return pwnet_from_prd(ctx, q, retrieve_prd(ctx.index, q, cfg.prd_docs), cfg);
        case Method::Rm3:
            return rm3_from_prd(ctx, q, retrieve_prd(ctx.index, q, cfg.prd_docs), cfg);
        case Method::NoWnet:
        case Method::FnPw:
        case Method::Kld:
        case Method::KldLca: {
            auto prd = retrieve_prd(ctx.index, q, cfg.prd_docs);
            if (prd.docs.empty()) return passthrough(q, method);
            Selection sel;
            if (method == Method::NoWnet) sel = select_nownet(ctx, q, prd, cfg);
            else if (method == Method::FnPw) sel = select_fnpw(ctx, q, prd, cfg);
            else if (method == Method::Kld) sel = select_kld(ctx, prd, cfg);
            else sel = select_kldlca(ctx, q, prd, cfg);
            if (sel.selected.empty()) return passthrough(q, method);
            return assemble_query(q, sel.selected, sel.max_score, cfg.beta, method);
        }
        case Method::KlWnet: {
            // Each constituent keeps its own PRD depth.
            const auto& pw_cfg = settings.pwnet;
            const auto& kl_cfg = settings.kldlca;
            auto pw_prd = retrieve_prd(ctx.index, q, pw_cfg.prd_docs);
            auto kl_prd = retrieve_prd(ctx.index, q, kl_cfg.prd_docs);
            Selection pw, kl;
            if (!pw_prd.docs.empty()) pw = select_pwnet(ctx, q, pw_prd, pw_cfg);
            if (!kl_prd.docs.empty()) kl = select_kldlca(ctx, q, kl_prd, kl_cfg);
            if (pw.selected.empty() && kl.selected.empty()) return passthrough(q, method);
            return combine_klwnet(q, pw, kl, cfg.alpha);
        }
    }
    throw ContractError("unhandled method");
}

void write_expanded(std::ostream& out, const std::vector<ExpandedQuery>& queries) {
    char buf[64];
    for (const auto& q : queries) {
        for (const auto& t : q.terms) {
            std::snprintf(buf, sizeof buf, "%.6f", t.weight);
            out << q.topic << '\t' << t.term << '\t' << buf << '\n';
        }
    }
}

}  // namespace glossqe
