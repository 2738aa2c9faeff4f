#include "glossqe/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "glossqe/error.hpp"

namespace glossqe {
namespace {

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

// Tags become spaces; only &amp; &lt; &gt; are decoded.
std::string strip_markup(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '<') {
            auto close = s.find('>', i);
            if (close == std::string_view::npos) {
                out.append(s.substr(i));
                break;
            }
            out.push_back(' ');
            i = close + 1;
        } else if (c == '&') {
            auto rest = s.substr(i);
            if (rest.starts_with("&amp;")) {
                out.push_back('&');
                i += 5;
            } else if (rest.starts_with("&lt;")) {
                out.push_back('<');
                i += 4;
            } else if (rest.starts_with("&gt;")) {
                out.push_back('>');
                i += 4;
            } else {
                out.push_back(c);
                ++i;
            }
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return collapse_ws(out);
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Field text runs until the next tag or the end of the block.
std::string_view field_text(std::string_view block, std::size_t start) {
    auto end = block.find('<', start);
    if (end == std::string_view::npos) end = block.size();
    return block.substr(start, end - start);
}

}  // namespace

std::vector<Document> parse_trec_docs(std::string_view content) {
    static constexpr std::string_view kOpen = "<DOC>";
    static constexpr std::string_view kClose = "</DOC>";
    static constexpr std::string_view kNoOpen = "<DOCNO>";
    static constexpr std::string_view kNoClose = "</DOCNO>";

    std::vector<Document> docs;
    std::size_t pos = 0;
    for (;;) {
        auto start = content.find(kOpen, pos);
        if (start == std::string_view::npos) break;
        auto body_begin = start + kOpen.size();
        auto end = content.find(kClose, body_begin);
        auto next_open = content.find(kOpen, body_begin);
        if (end == std::string_view::npos || next_open < end)
            throw ParseError("unclosed <DOC> at byte offset " + std::to_string(start));
        std::string_view body = content.substr(body_begin, end - body_begin);

        auto no_open = body.find(kNoOpen);
        auto no_close = no_open == std::string_view::npos ? no_open : body.find(kNoClose, no_open);
        if (no_open == std::string_view::npos || no_close == std::string_view::npos)
            throw ParseError("<DOC> without <DOCNO> at byte offset " + std::to_string(start));
        auto docno = trim(body.substr(no_open + kNoOpen.size(), no_close - no_open - kNoOpen.size()));
        if (docno.empty())
            throw ParseError("empty <DOCNO> at byte offset " + std::to_string(start));

        std::string text(body.substr(0, no_open));
        text.push_back(' ');
        text.append(body.substr(no_close + kNoClose.size()));
        docs.push_back({std::string(docno), strip_markup(text)});
        pos = end + kClose.size();
    }
    return docs;
}

std::vector<Document> parse_trec_docs(std::istream& in) {
    return parse_trec_docs(slurp(in));
}

std::vector<Topic> parse_topics(std::string_view content) {
    // Topic files mix case (<top>, <TOP>) and often leave fields unclosed.
    const std::string lower = lower_copy(content);
    std::vector<Topic> topics;
    std::size_t pos = 0;
    for (;;) {
        auto start = lower.find("<top>", pos);
        if (start == std::string::npos) break;
        auto end = lower.find("</top>", start);
        if (end == std::string::npos) end = lower.size();
        std::string_view block(lower.data() + start, end - start);
        std::string_view orig = content.substr(start, end - start);

        auto num = block.find("<num>");
        if (num == std::string_view::npos)
            throw ParseError("topic without <num> at byte offset " + std::to_string(start));
        auto num_text = field_text(block, num + 5);
        auto digit = num_text.find_first_of("0123456789");
        int id = 0;
        std::errc ec = std::errc::invalid_argument;
        if (digit != std::string_view::npos)
            ec = std::from_chars(num_text.data() + digit, num_text.data() + num_text.size(), id).ec;
        if (ec != std::errc() || id <= 0)
            throw ParseError("topic with unreadable <num> at byte offset " + std::to_string(start));

        auto title = block.find("<title>");
        if (title == std::string_view::npos)
            throw ParseError("topic " + std::to_string(id) + " has no <title>");
        auto title_begin = title + 7;
        auto title_len = field_text(block, title_begin).size();
        std::string text = collapse_ws(orig.substr(title_begin, title_len));
        if (lower_copy(text).starts_with("topic:")) text = collapse_ws(text.substr(6));
        if (text.empty())
            throw ParseError("topic " + std::to_string(id) + " has an empty <title>");
        topics.push_back({id, std::move(text)});
        pos = end;
    }
    return topics;
}

std::vector<Topic> parse_topics(std::istream& in) {
    return parse_topics(slurp(in));
}

int QrelSet::grade(TopicId topic, std::string_view docno) const {
    auto t = judgments_.find(topic);
    if (t == judgments_.end()) return -1;
    auto d = t->second.find(docno);
    return d == t->second.end() ? -1 : d->second;
}

std::size_t QrelSet::num_relevant(TopicId topic) const {
    auto t = judgments_.find(topic);
    if (t == judgments_.end()) return 0;
    return static_cast<std::size_t>(
        std::count_if(t->second.begin(), t->second.end(), [](const auto& kv) { return kv.second > 0; }));
}

std::size_t QrelSet::size() const {
    std::size_t n = 0;
    for (const auto& [_, m] : judgments_) n += m.size();
    return n;
}

std::vector<TopicId> QrelSet::topics() const {
    std::vector<TopicId> out;
    for (const auto& [t, _] : judgments_) out.push_back(t);
    return out;
}

const std::map<std::string, int, std::less<>>* QrelSet::judgments(TopicId topic) const {
    auto t = judgments_.find(topic);
    return t == judgments_.end() ? nullptr : &t->second;
}

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        auto b = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > b) fields.push_back(line.substr(b, i - b));
    }
    return fields;
}

}  // namespace

QrelSet parse_qrels(std::istream& in) {
    QrelSet qrels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto f = split_ws(line);
        if (f.empty()) continue;
        if (f.size() != 4)
            throw ParseError("qrels line " + std::to_string(lineno) + ": expected 4 fields");
        int topic = 0;
        int grade = 0;
        if (!parse_number(f[0], topic))
            throw ParseError("qrels line " + std::to_string(lineno) + ": bad topic '" + std::string(f[0]) + "'");
        if (!parse_number(f[3], grade))
            throw ParseError("qrels line " + std::to_string(lineno) + ": bad grade '" + std::string(f[3]) + "'");
        // Negative grades (e.g. -2 for spam) count as judged non-relevant.
        qrels.set(topic, std::string(f[2]), std::max(grade, 0));
    }
    return qrels;
}

void validate_run(const RunFile& run) {
    for (const auto& [topic, entries] : run) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].rank != static_cast<int>(i + 1))
                throw ContractError("run topic " + std::to_string(topic) + ": expected rank " +
                                    std::to_string(i + 1) + ", found " + std::to_string(entries[i].rank));
            if (i > 0 && entries[i].score > entries[i - 1].score)
                throw ContractError("run topic " + std::to_string(topic) + ": score increases at rank " +
                                    std::to_string(entries[i].rank));
        }
    }
}

void write_run(std::ostream& out, const RunFile& run, std::string_view tag) {
    validate_run(run);
    char buf[64];
    for (const auto& [topic, entries] : run) {
        for (const auto& e : entries) {
            std::snprintf(buf, sizeof buf, "%.6f", e.score);
            out << topic << " Q0 " << e.docno << ' ' << e.rank << ' ' << buf << ' ' << tag << '\n';
        }
    }
}

RunFile read_run(std::istream& in) {
    RunFile run;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto f = split_ws(line);
        if (f.empty()) continue;
        if (f.size() != 6) throw ParseError("run line " + std::to_string(lineno) + ": expected 6 fields");
        int topic = 0;
        RunEntry e;
        if (!parse_number(f[0], topic) || !parse_number(f[3], e.rank))
            throw ParseError("run line " + std::to_string(lineno) + ": bad topic or rank");
        try {
            std::size_t used = 0;
            e.score = std::stod(std::string(f[4]), &used);
            if (used != f[4].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("run line " + std::to_string(lineno) + ": bad score '" + std::string(f[4]) + "'");
        }
        e.docno = std::string(f[2]);
        run[topic].push_back(std::move(e));
    }
    for (auto& [_, entries] : run)
        std::stable_sort(entries.begin(), entries.end(),
                         [](const RunEntry& a, const RunEntry& b) { return a.rank < b.rank; });
    return run;
}

std::string read_file(const std::string& path) {
    if (path.ends_with(".gz")) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw DataError("cannot open " + path);
        std::string out;
        char buf[1 << 16];
        int n = 0;
        while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
        bool failed = n < 0;
        gzclose(f);
        if (failed) throw DataError("corrupt gzip stream in " + path);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return slurp(in);
}

}  // namespace glossqe
