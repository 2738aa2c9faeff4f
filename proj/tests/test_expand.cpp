#include <cmath>
#include <set>

#include "doctest.h"
#include "glossqe/error.hpp"
#include "glossqe/expand.hpp"
#include "support.hpp"

using namespace glossqe;

namespace {

GlossLexicon tsv(const std::string& text) {
    std::istringstream in(text);
    return load_tsv_lexicon(in);
}

TopicQuery topic(const Analyzer& a, std::string title, TopicId id = 1) { return prepare_topic({id, std::move(title)}, a); }

PseudoRelevantDocs all_docs_prd(const InvertedIndex& idx) {
    PseudoRelevantDocs prd;
    for (DocId d = 0; d < idx.num_docs(); ++d) prd.docs.push_back({d, idx.docno(d), 1.0});
    prd.max_sim = 1.0;
    return prd;
}

std::set<std::string> names(const std::vector<ScoredTerm>& v) {
    std::set<std::string> out;
    for (const auto& t : v) out.insert(t.term);
    return out;
}

// Small collections for the hand-checked fixtures.
struct Toy {
    Analyzer analyzer;
    InvertedIndex index;
    GlossLexicon lexicon;
    Toy(std::vector<Document> docs, std::string lex = "")
        : index(InvertedIndex::build(docs, analyzer)), lexicon(tsv(lex)) {}
    ExpansionContext ctx() const { return {index, analyzer, &lexicon}; }
};

}  // namespace

TEST_CASE("method names round trip") {
    for (auto m : all_methods()) CHECK(parse_method(method_name(m)) == m);
    CHECK_THROWS_AS(parse_method("bo1"), std::invalid_argument);
    CHECK(needs_lexicon(Method::PWnet));
    CHECK_FALSE(needs_lexicon(Method::Kld));
}

TEST_CASE("default parameters") {
    auto pw = default_config(Method::PWnet);
    CHECK(pw.prd_docs == 10);
    CHECK(pw.num_terms == 60);
    CHECK(pw.beta == 2.0);
    CHECK(pw.mode == OverlapMode::Dice);
    auto kld = default_config(Method::Kld);
    CHECK(kld.prd_docs == 10);
    CHECK(kld.num_terms == 40);
    CHECK(kld.beta == 1.0);
    auto rm3 = default_config(Method::Rm3);
    CHECK(rm3.prd_docs == 50);
    CHECK(rm3.num_terms == 50);
    CHECK(rm3.mu == 2500.0);
    CHECK(rm3.lambda == 0.5);
    auto kl = default_config(Method::KldLca);
    CHECK(kl.prd_docs == 50);
    CHECK(kl.num_terms == 40);
    CHECK(kl.beta == 1.0);
    CHECK(default_config(Method::KlWnet).alpha == 0.3);

    ExpansionConfig bad;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.num_terms = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("robertson idf") {
    CHECK(robertson_idf(1000, 10) == doctest::Approx(1.9746).epsilon(1e-4));
    CHECK(robertson_idf(1000, 600) == 0.0001);
    CHECK(robertson_idf(1000, 500) == 0.0001);
    for (std::uint64_t nt = 500; nt <= 1000; ++nt) CHECK(robertson_idf(1000, nt) == 0.0001);
}

TEST_CASE("pseudo-relevant documents") {
    const auto& m = testing::mini();
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        std::set<std::string> matching;
        for (const auto& [term, _] : q.term_counts)
            for (const auto& [docno, tf] : m.index.postings(term)) matching.insert(docno);
        auto prd = retrieve_prd(m.index, q, 10);
        REQUIRE(prd.docs.size() == std::min<std::size_t>(10, matching.size()));
        CHECK(prd.max_sim == prd.docs.front().score);
        for (std::size_t i = 1; i < prd.docs.size(); ++i) CHECK(prd.docs[i].score <= prd.docs[i - 1].score);
        for (const auto& d : prd.docs) CHECK(d.score > 0.0);
    }
    Toy toy({{"D1", "walnut"}, {"D2", "walnut cedar"}, {"D3", "cedar"}});
    auto prd = retrieve_prd(toy.index, topic(toy.analyzer, "walnut"), 50);
    CHECK(prd.docs.size() == 2);
    CHECK(retrieve_prd(toy.index, topic(toy.analyzer, "nothing"), 5).docs.empty());
}

TEST_CASE("title term weights") {
    Analyzer a;
    for (const auto& w : original_term_weights(topic(a, "lyme disease arthritis"))) CHECK(w.score == 1.0);
    auto w = original_term_weights(topic(a, "walnut walnut cedar"));
    REQUIRE(w.size() == 2);
    CHECK(w[0].score == doctest::Approx(1.0));
    CHECK(w[1].score == doctest::Approx(1.0 / (1.0 + std::log(2.0))));
}

TEST_CASE("assembly: original term with expansion score, expansion-only term") {
    Analyzer a;
    auto q = topic(a, "polygamy", 316);
    auto e = assemble_query(q, {{"polygami", 0.94}, {"monogami", 0.5}}, 1.0, 2.0, Method::PWnet);
    REQUIRE(e.find("polygami"));
    CHECK(e.find("polygami")->weight == doctest::Approx(2.94).epsilon(1e-6));
    CHECK(e.find("monogami")->weight == doctest::Approx(0.5));
    CHECK(e.terms.front().term == "polygami");
    CHECK_THROWS_AS(assemble_query(q, {{"x", 0.0}}, 0.0, 2.0, Method::PWnet), ContractError);
}

TEST_CASE("klwnet combination") {
    Analyzer a;
    auto q = topic(a, "polygamy", 316);
    Selection pw, kl;
    pw.selected = {{"polygami", 0.94}, {"both", 1.0}};
    pw.max_score = 1.0;
    kl.selected = {{"widow", 0.6865}, {"both", 1.0}};
    kl.max_score = 1.0;
    auto e = combine_klwnet(q, pw, kl, 0.3);
    CHECK(e.find("widow")->weight == doctest::Approx(0.4806).epsilon(1e-4));
    CHECK(e.find("both")->weight == doctest::Approx(1.0));
    CHECK(e.find("polygami")->weight == 1.0);  // original terms stay at their title weight
    CHECK(e.terms.size() == 3);
}

TEST_CASE("pwnet summand algebra") {
    // one word unit "bolt" whose gloss equals that of "rivet"; rivet is in every PRD document
    Toy toy({{"D1", "bolt rivet"}, {"D2", "rivet"}, {"D3", "nail"}, {"D4", "nail"}, {"D5", "nail"}},
            "bolt\ta metal fastener\nrivet\ta metal fastener\nnail\ta slender spike\n");
    auto q = topic(toy.analyzer, "bolt");
    auto units = detect_units(q.words, toy.lexicon, toy.analyzer);
    REQUIRE(units.size() == 1);
    auto prd = all_docs_prd(toy.index);
    const auto rivet = *toy.index.term_id("rivet");
    auto c = pwnet_score(toy.ctx(), rivet, units, prd, OverlapMode::Dice);
    // rel = 1, idf = log10(3.5/2.5), mass = 2
    const double s = std::log10(3.5 / 2.5) * 2.0;
    REQUIRE(c.per_unit.size() == 1);
    CHECK(c.per_unit[0] == doctest::Approx(s));
    CHECK(c.score == doctest::Approx(s / (1 + s)));

    auto nail = pwnet_score(toy.ctx(), *toy.index.term_id("nail"), units, prd, OverlapMode::Dice);
    CHECK(nail.score == 0.0);

    PseudoRelevantDocs first_only{1, {prd.docs[0]}, 1.0};
    CHECK_THROWS_AS(pwnet_score(toy.ctx(), *toy.index.term_id("nail"), units, first_only, OverlapMode::Dice),
                    ContractError);
}

TEST_CASE("pwnet: S = 0.5 when s = 1, bounded for huge s") {
    // rivet: df 2 of N = 10, so idf = log10(8.5/2.5); the second PRD document's
    // similarity ratio r is chosen so that idf * (1 + r) = 1
    std::vector<Document> docs{{"D1", "bolt rivet"}, {"D2", "rivet"}};
    for (int i = 0; i < 8; ++i) docs.push_back({"N" + std::to_string(i), "nail"});
    Toy toy(docs, "bolt\tmetal pin\nrivet\tmetal pin\n");
    auto units = detect_units(topic(toy.analyzer, "bolt").words, toy.lexicon, toy.analyzer);
    const double r = 1.0 / std::log10(8.5 / 2.5) - 1.0;
    PseudoRelevantDocs prd{1, {{0, "D1", 4.0}, {1, "D2", 4.0 * r}}, 4.0};
    auto c = pwnet_score(toy.ctx(), *toy.index.term_id("rivet"), units, prd, OverlapMode::Dice);
    CHECK(c.per_unit[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.score == doctest::Approx(0.5).epsilon(1e-9));

    const double big = 1e6;
    CHECK(big / (1 + big) < 1.0);
}

TEST_CASE("pwnet bound and normalization on the mini collection") {
    const auto& m = testing::mini();
    const auto cfg = default_config(Method::PWnet);
    for (const auto& t : m.topics) {
        CAPTURE(t.title);
        auto q = prepare_topic(t, m.analyzer);
        const auto units = detect_units(q.words, m.lexicon, m.analyzer).size();
        auto prd = retrieve_prd(m.index, q, cfg.prd_docs);
        auto sel = select_pwnet(m.ctx(), q, prd, cfg);
        REQUIRE_FALSE(sel.selected.empty());
        for (const auto& c : sel.candidates) {
            CHECK(c.score >= 0.0);
            CHECK(c.score < static_cast<double>(units));
        }
        CHECK(sel.selected.front().score / sel.max_score == 1.0);
        CHECK(sel.selected.size() <= cfg.num_terms);

        auto e = pwnet_from_prd(m.ctx(), q, prd, cfg);
        for (const auto& [term, _] : q.term_counts) CHECK(e.find(term));
        for (const auto& w : e.terms) CHECK(w.weight > 0.0);
    }
}

TEST_CASE("pwnet output is invariant to scaling the PRD similarities") {
    const auto& m = testing::mini();
    const auto cfg = default_config(Method::PWnet);
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        auto prd = retrieve_prd(m.index, q, cfg.prd_docs);
        auto scaled = prd;
        for (auto& d : scaled.docs) d.score *= 7.3;
        scaled.max_sim = scaled.docs.front().score;
        CHECK(pwnet_from_prd(m.ctx(), q, prd, cfg) == pwnet_from_prd(m.ctx(), q, scaled, cfg));
    }
}

TEST_CASE("fewer candidates than T: all positive candidates selected") {
    Toy toy({{"D1", "bolt rivet screw"}, {"D2", "nail"}, {"D3", "nail"}},
            "bolt\tmetal pin\nrivet\tmetal pin\nscrew\tmetal pin with thread\n");
    auto q = topic(toy.analyzer, "bolt");
    auto prd = retrieve_prd(toy.index, q, 10);
    auto sel = select_pwnet(toy.ctx(), q, prd, default_config(Method::PWnet));
    CHECK(names(sel.selected) == std::set<std::string>{"bolt", "rivet", "screw"});
}

TEST_CASE("no-wnet and p-wnet agree exactly where every gloss overlap is 1") {
    const auto& m = testing::mini();
    const auto cfg = default_config(Method::PWnet);
    std::size_t same = 0, differ = 0;
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        auto prd = retrieve_prd(m.index, q, cfg.prd_docs);
        auto units = detect_units(q.words, m.lexicon, m.analyzer);
        auto pw = select_pwnet(m.ctx(), q, prd, cfg);
        auto nw = select_nownet(m.ctx(), q, prd, cfg);
        std::map<std::string, double> nw_score;
        for (const auto& c : nw.candidates) nw_score[c.term] = c.score;
        for (const auto& c : pw.candidates) {
            const auto id = *m.index.term_id(c.term);
            const auto gloss = term_gloss_set(m.lexicon, m.index, id, m.analyzer);
            bool all_one = true;
            for (const auto& u : units) all_one &= rel(gloss, u.gloss, cfg.mode) == 1.0;
            if (all_one) {
                CHECK(c.score == doctest::Approx(nw_score.at(c.term)).epsilon(1e-12));
                ++same;
            } else {
                CHECK(c.score < nw_score.at(c.term));
                ++differ;
            }
        }
    }
    CHECK(differ > 0);
}

TEST_CASE("fn-pw ignores idf and PRD weight; orderings diverge") {
    // "amber" and "basil" share the query's gloss words equally, but amber is common in the collection
    std::vector<Document> docs{{"D1", "cedar amber basil"}, {"D2", "cedar amber"}};
    for (int i = 0; i < 8; ++i) docs.push_back({"F" + std::to_string(i), "amber walnut"});
    Toy toy(docs, "cedar\tfragrant reddish wood\namber\tfragrant wood resin\nbasil\treddish fragrant herb\n");
    auto q = topic(toy.analyzer, "cedar");
    auto prd = retrieve_prd(toy.index, q, 10);
    REQUIRE(prd.docs.size() == 2);
    auto cfg = default_config(Method::FnPw);
    auto fn = select_fnpw(toy.ctx(), q, prd, cfg);
    auto pw = select_pwnet(toy.ctx(), q, prd, cfg);
    auto score = [](const Selection& s, const std::string& t) {
        for (const auto& c : s.candidates)
            if (c.term == t) return c.score;
        return -1.0;
    };
    // both glosses share 2 of 3 words with cedar's: same fn-pw score
    CHECK(score(fn, "amber") == doctest::Approx(2.0 / 3.0));
    CHECK(score(fn, "basil") == doctest::Approx(2.0 / 3.0));
    CHECK(score(fn, "cedar") == doctest::Approx(1.0));
    CHECK(score(fn, "walnut") == -1.0);  // not in the PRD
    // p-wnet: amber's idf is clamped, basil wins despite the smaller PRD mass
    CHECK(score(pw, "basil") > score(pw, "amber"));
}

TEST_CASE("kld term scores") {
    // term "quartz": once in a 10-token PRD document, once in a 100-token collection
    std::vector<Document> docs{{"D1", "quartz f1 f2 f3 f4 f5 f6 f7 f8 f9"}};
    std::string filler;
    for (int i = 0; i < 90; ++i) filler += "g" + std::to_string(i % 30) + " ";
    docs.push_back({"D2", filler});
    Toy toy(docs);
    auto q = topic(toy.analyzer, "quartz");
    auto prd = retrieve_prd(toy.index, q, 1);
    auto sel = select_kld(toy.ctx(), prd, default_config(Method::Kld));
    REQUIRE_FALSE(sel.candidates.empty());
    const auto& top = sel.candidates.front();
    CHECK(top.score == doctest::Approx(0.1 * std::log2(10.0)));
    CHECK(top.score == doctest::Approx(0.33219).epsilon(1e-4));
    CHECK(names(sel.candidates).count("g1") == 0);  // absent from the PRD

    // PRD equal to the collection: zero divergence everywhere
    Toy same(std::vector<Document>{{"D1", "quartz mica mica"}});
    auto flat = select_kld(same.ctx(), all_docs_prd(same.index), default_config(Method::Kld));
    for (const auto& c : flat.candidates) CHECK(c.score == doctest::Approx(0.0));
    CHECK(flat.selected.empty());
}

TEST_CASE("kld selected scores are positive on the mini collection") {
    const auto& m = testing::mini();
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        auto sel = select_kld(m.ctx(), retrieve_prd(m.index, q, 10), default_config(Method::Kld));
        REQUIRE_FALSE(sel.selected.empty());
        for (const auto& s : sel.selected) CHECK(s.score > 0.0);
    }
}

TEST_CASE("lca belief: three-document worked example") {
    Toy toy({{"D1", "quark quark amber basil"},
             {"D2", "quark amber amber cedar"},
             {"D3", "quark rune basil"},
             {"F1", "zinc yarn"},
             {"F2", "zinc walnut"},
             {"F3", "yarn walnut"}});
    auto q = topic(toy.analyzer, "quark rune");
    auto prd = retrieve_prd(toy.index, q, 3);
    REQUIRE(prd.docs.size() == 3);
    auto bel = [&](const char* t) { return lca_belief(toy.index, q, prd, *toy.index.term_id(t)); };
    // co(amber,quark)=4, co(amber,rune)=0, idf_amber=log10(3)/5, idf_quark=log10(2)/5, idf_rune=log10(6)/5
    CHECK(bel("amber") == doctest::Approx(0.638011594054473).epsilon(1e-12));
    CHECK(bel("basil") == doctest::Approx(0.633406330354766).epsilon(1e-12));
    CHECK(bel("cedar") == doctest::Approx(0.608364341893206).epsilon(1e-12));
    // no co-occurrence at all: the floor Π δ^idf_q
    const double floor = std::pow(0.1, std::log10(2.0) / 5) * std::pow(0.1, std::log10(6.0) / 5);
    CHECK(bel("zinc") == doctest::Approx(floor));
}

TEST_CASE("kldlca: reranking changes the selected set") {
    // x has the larger KLD score but co-occurs with the query term only weakly
    Toy toy({{"D1", "quark quark quark amber amber amber amber amber"},
             {"D2", "quark xenon xenon xenon xenon xenon xenon"},
             {"F1", "zinc yarn"},
             {"F2", "zinc walnut"},
             {"F3", "yarn walnut"},
             {"F4", "zinc yarn walnut"}});
    auto q = topic(toy.analyzer, "quark");
    auto prd = retrieve_prd(toy.index, q, 2);
    ExpansionConfig cfg = default_config(Method::KldLca);
    cfg.num_terms = 1;
    auto kld = select_kld(toy.ctx(), prd, cfg);
    auto lca = select_kldlca(toy.ctx(), q, prd, cfg);
    REQUIRE(kld.selected.size() == 1);
    CHECK(kld.selected[0].term == "xenon");
    REQUIRE(lca.selected.size() == 1);
    CHECK(lca.selected[0].term == "amber");
}

TEST_CASE("kldlca: LCA order equal to KLD order gives plain KLD") {
    // every candidate lives in one document: KLD and co-occurrence both follow tf
    Toy toy({{"D1", "quark amber amber amber amber amber basil basil basil basil cedar cedar cedar dune dune"},
             {"F1", "zinc yarn"},
             {"F2", "zinc walnut"},
             {"F3", "yarn walnut"}});
    auto q = topic(toy.analyzer, "quark");
    auto prd = retrieve_prd(toy.index, q, 1);
    ExpansionConfig cfg = default_config(Method::KldLca);
    cfg.num_terms = 2;
    auto kld = select_kld(toy.ctx(), prd, cfg);
    auto lca = select_kldlca(toy.ctx(), q, prd, cfg);
    CHECK(lca.selected == kld.selected);
    CHECK(lca.max_score == kld.max_score);
}

TEST_CASE("kldlca contract on the mini collection") {
    const auto& m = testing::mini();
    const auto cfg = default_config(Method::KldLca);
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        auto prd = retrieve_prd(m.index, q, cfg.prd_docs);
        auto pool_cfg = cfg;
        pool_cfg.num_terms = 2 * cfg.num_terms;
        auto pool = select_kld(m.ctx(), prd, pool_cfg).selected;
        auto sel = select_kldlca(m.ctx(), q, prd, cfg);
        CHECK(sel.selected.size() == std::min(pool.size(), cfg.num_terms));
        for (const auto& s : sel.selected) {
            auto it = std::find(pool.begin(), pool.end(), s);  // same term, same KLD weight
            CHECK(it != pool.end());
        }
    }
}

TEST_CASE("relevance model: toy instance and normalization") {
    Toy toy(std::vector<Document>{{"D1", "apple apple banana"}, {"D2", "banana cherry cherry cherry"}});
    auto q = topic(toy.analyzer, "apple");
    auto prd = all_docs_prd(toy.index);
    std::vector<TermId> terms{*toy.index.term_id("appl"), *toy.index.term_id("banana"),
                              *toy.index.term_id("cherri")};
    auto p = relevance_model(toy.index, q, prd, 2.0, terms);
    CHECK(p[0] == doctest::Approx(0.448809523809524).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.30610119047619).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.245089285714286).epsilon(1e-12));
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0));

    // over the whole vocabulary the model is a distribution
    const auto& m = testing::mini();
    auto mq = prepare_topic(m.topics[0], m.analyzer);
    auto mprd = retrieve_prd(m.index, mq, 50);
    std::vector<TermId> all(m.index.num_terms());
    for (TermId t = 0; t < all.size(); ++t) all[t] = t;
    double sum = 0;
    for (double x : relevance_model(m.index, mq, mprd, 2500.0, all)) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rm3 with lambda = 1 reduces to the original query") {
    const auto& m = testing::mini();
    auto cfg = default_config(Method::Rm3);
    cfg.lambda = 1.0;
    auto q = topic(m.analyzer, "heart attack heart", 9);
    auto e = rm3_from_prd(m.ctx(), q, retrieve_prd(m.index, q, cfg.prd_docs), cfg);
    REQUIRE(e.terms.size() == 2);
    CHECK(e.find("heart")->weight == doctest::Approx(1.0));
    CHECK(e.find("attack")->weight == doctest::Approx(0.5));
}

TEST_CASE("empty PRD passes the original query through") {
    const auto& m = testing::mini();
    auto q = topic(m.analyzer, "zzzunseen qqqmissing", 5);
    ExpansionSettings settings;
    for (auto method : all_methods()) {
        CAPTURE(method_name(method));
        auto e = expand(m.ctx(), method, q, settings);
        CHECK(e.terms.size() == 2);
        CHECK(e.method == method);
    }
}

TEST_CASE("lexicon-based methods refuse to run without a lexicon") {
    const auto& m = testing::mini();
    ExpansionContext bare{m.index, m.analyzer, nullptr};
    auto q = prepare_topic(m.topics[0], m.analyzer);
    CHECK_THROWS_AS(expand(bare, Method::PWnet, q, {}), ContractError);
    CHECK_NOTHROW(expand(bare, Method::Kld, q, {}));
    CHECK_NOTHROW(expand(bare, Method::NoWnet, q, {}));
}

TEST_CASE("klwnet union and convexity on the mini collection") {
    const auto& m = testing::mini();
    ExpansionSettings s;
    for (const auto& t : m.topics) {
        auto q = prepare_topic(t, m.analyzer);
        auto pw = select_pwnet(m.ctx(), q, retrieve_prd(m.index, q, s.pwnet.prd_docs), s.pwnet);
        auto kl = select_kldlca(m.ctx(), q, retrieve_prd(m.index, q, s.kldlca.prd_docs), s.kldlca);
        auto e = expand(m.ctx(), Method::KlWnet, q, s);
        std::map<std::string, double> a, b;
        for (const auto& x : pw.selected) a[x.term] = x.score / pw.max_score;
        for (const auto& x : kl.selected) b[x.term] = x.score / kl.max_score;
        std::set<std::string> want;
        for (const auto& [k, _] : a) want.insert(k);
        for (const auto& [k, _] : b) want.insert(k);
        for (const auto& [term, _] : q.term_counts) want.insert(term);
        std::set<std::string> got;
        for (const auto& w : e.terms) got.insert(w.term);
        CHECK(got == want);
        for (const auto& w : e.terms) {
            if (std::any_of(q.term_counts.begin(), q.term_counts.end(),
                            [&](const auto& tc) { return tc.first == w.term; }))
                continue;
            const double x = a.count(w.term) ? a[w.term] : 0.0, y = b.count(w.term) ? b[w.term] : 0.0;
            CHECK(w.weight >= std::min(x, y) - 1e-15);
            CHECK(w.weight <= std::max(x, y) + 1e-15);
        }
    }
}

TEST_CASE("expansion is deterministic and sorted") {
    const auto& m = testing::mini();
    ExpansionSettings s;
    for (auto method : all_methods()) {
        for (const auto& t : m.topics) {
            auto q = prepare_topic(t, m.analyzer);
            auto a = expand(m.ctx(), method, q, s);
            CHECK(a == expand(m.ctx(), method, q, s));
            for (std::size_t i = 1; i < a.terms.size(); ++i) {
                const auto& p = a.terms[i - 1];
                const auto& c = a.terms[i];
                CHECK((p.weight > c.weight || (p.weight == c.weight && p.term < c.term)));
            }
        }
    }
}

TEST_CASE("expanded query TSV") {
    std::ostringstream out;
    write_expanded(out, {{604, Method::PWnet, {{"lyme", 2.0}, {"inflamm", 0.40916}}}});
    CHECK(out.str() == "604\tlyme\t2.000000\n604\tinflamm\t0.409160\n");
}
