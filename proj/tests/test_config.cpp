#include <cstdlib>
#include <sys/wait.h>

#include "doctest.h"
#include "glossqe/eval.hpp"
#include "glossqe/experiment.hpp"
#include "support.hpp"

using namespace glossqe;

namespace {

int run_cli(const std::string& args, const std::filesystem::path& log) {
    const std::string cmd = std::string(GLOSSQE_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string mini_args() {
    return " --topics " + testing::mini_path("topics.txt") + " --qrels " + testing::mini_path("qrels.txt") +
           " --lexicon " + testing::mini_path("lexicon.tsv");
}

}  // namespace

TEST_CASE("defaults serialize to the published parameter table") {
    const auto text = ExperimentConfig{}.serialize();
    for (const char* line : {"pwnet.D = 10\n", "pwnet.T = 60\n", "pwnet.beta = 2\n", "kld.D = 10\n", "kld.T = 40\n",
                             "kld.beta = 1\n", "rm3.D = 50\n", "rm3.T = 50\n", "rm3.mu = 2500\n",
                             "rm3.lambda = 0.5\n", "kldlca.D = 50\n", "kldlca.T = 40\n", "kldlca.beta = 1\n",
                             "klwnet.alpha = 0.3\n", "depth = 1000\n", "rel_mode = dice\n"}) {
        CAPTURE(line);
        CHECK(text.find(line) != std::string::npos);
    }
    CHECK(ExperimentConfig::parse(text).settings.klwnet.alpha == 0.3);
}

TEST_CASE("config parse/serialize fixed point") {
    const std::string text = "# experiment\n"
                             "corpus = a.trec, b.trec.gz\n"
                             "index = mini.idx\n"
                             "method = kldlca\n"
                             "k = 500\n"
                             "threads = 4\n"
                             "rel_mode = jaccard\n"
                             "kldlca.T = 25\n"
                             "rm3.lambda = 0.7\n"
                             "klwnet.alpha = 0.45\n"
                             "pwnet.beta = 1.5\n";
    auto cfg = ExperimentConfig::parse(text);
    CHECK(cfg.corpus == std::vector<std::string>{"a.trec", "b.trec.gz"});
    CHECK(cfg.method == Method::KldLca);
    CHECK(cfg.depth == 500);
    CHECK(cfg.settings.kldlca.num_terms == 25);
    CHECK(cfg.settings.pwnet.mode == OverlapMode::Jaccard);
    const auto once = cfg.serialize();
    const auto again = ExperimentConfig::parse(once);
    CHECK(again == cfg);
    CHECK(again.serialize() == once);
    CHECK(ExperimentConfig::parse(ExperimentConfig{}.serialize()) == ExperimentConfig{});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(ExperimentConfig::parse("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::parse("method = bo1\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::parse("depth = -3\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::parse("pwnet.beta = lots\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::parse("rm3.beta = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::parse("no equals sign\n"), std::invalid_argument);
    auto cfg = ExperimentConfig::parse("klwnet.alpha = 2\n");
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("thread count does not change the run") {
    const auto& m = testing::mini();
    ExpansionSettings s;
    for (auto method : all_methods()) {
        CAPTURE(method_name(method));
        auto one = run_topics(m.ctx(), method, m.topics, s, 1000, 1);
        auto eight = run_topics(m.ctx(), method, m.topics, s, 1000, 8);
        CHECK(one == eight);
    }
}

TEST_CASE("cli: index, run, eval, compare") {
    const auto dir = testing::scratch("cli");
    const auto idx = (dir / "mini.idx").string();
    REQUIRE(run_cli("index --corpus " + testing::mini_path("docs.trec") + " --out " + idx, dir / "index.log") == 0);

    REQUIRE(run_cli("search --index " + idx + " --topics " + testing::mini_path("topics.txt") + " --out " +
                        (dir / "base.run").string(),
                    dir / "search.log") == 0);

    // config file plus a flag that overrides it
    {
        std::ofstream cfg(dir / "exp.cfg");
        cfg << "index = " << idx << "\nmethod = kld\npwnet.T = 60\n";
    }
    REQUIRE(run_cli("run --config " + (dir / "exp.cfg").string() + " --method pwnet --T 30" + mini_args() +
                        " --out " + (dir / "pwnet.run").string(),
                    dir / "run.log") == 0);
    const auto report = testing::slurp((dir / "run.log").string());
    CHECK(report.find("MAP") != std::string::npos);
    CHECK(testing::slurp((dir / "pwnet.run").string()).find(" pwnet\n") != std::string::npos);

    // the run above used pwnet with T = 30
    const auto& m = testing::mini();
    ExpansionSettings s;
    s.pwnet.num_terms = 30;
    auto want = run_topics(m.ctx(), Method::PWnet, m.topics, s, 1000, 1);
    std::istringstream in(testing::slurp((dir / "pwnet.run").string()));
    auto got = read_run(in);
    REQUIRE(got.size() == want.size());
    for (const auto& [topic, entries] : want) {
        REQUIRE(got[topic].size() == entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) CHECK(got[topic][i].docno == entries[i].docno);
    }

    CHECK(run_cli("eval --run " + (dir / "pwnet.run").string() + " --qrels " + testing::mini_path("qrels.txt") +
                      " --baseline-run " + (dir / "base.run").string(),
                  dir / "eval.log") == 0);
    CHECK(testing::slurp((dir / "eval.log").string()).find("> baseline on") != std::string::npos);

    CHECK(run_cli("compare " + (dir / "base.run").string() + " " + (dir / "base.run").string() + " --qrels " +
                      testing::mini_path("qrels.txt"),
                  dir / "self.log") == 0);
    const auto self = testing::slurp((dir / "self.log").string());
    CHECK(self.find("(+0.0%)") != std::string::npos);
    CHECK(self.find("p=1.0000") != std::string::npos);

    CHECK(run_cli("expand --method kld --index " + idx + " --topics " + testing::mini_path("topics.txt") +
                      " --out " + (dir / "kld.tsv").string(),
                  dir / "expand.log") == 0);
    CHECK(testing::slurp((dir / "kld.tsv").string()).rfind("401\t", 0) == 0);
}

TEST_CASE("cli: exit codes") {
    const auto dir = testing::scratch("cli_errors");
    CHECK(run_cli("", dir / "none.log") == 1);
    CHECK(run_cli("frobnicate", dir / "unknown.log") == 1);
    CHECK(run_cli("run --method bogus --index x --topics y", dir / "method.log") == 1);
    CHECK(testing::slurp((dir / "method.log").string()).find("bogus") != std::string::npos);
    CHECK(run_cli("run --method pwnet --index " + (dir / "missing.idx").string() + mini_args(), dir / "idx.log") ==
          2);
    {
        std::ofstream bad(dir / "bad.trec");
        bad << "<DOC><TEXT>no docno</TEXT></DOC>";
    }
    CHECK(run_cli("index --corpus " + (dir / "bad.trec").string() + " --out " + (dir / "x.idx").string(),
                  dir / "parse.log") == 2);
    {
        std::ofstream run(dir / "bad.run");
        run << "1 Q0 A 1 1.0 t\n1 Q0 B 2 0.5\n";
    }
    CHECK(run_cli("eval --run " + (dir / "bad.run").string() + " --qrels " + testing::mini_path("qrels.txt"),
                  dir / "short.log") == 2);
}
