#include "glossqe/textproc.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace glossqe {

namespace detail {
extern const std::string_view kEnglishStopwords;
}

namespace {

constexpr std::size_t kMaxDigitRun = 12;

bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool all_digits(const std::string& s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && !(cur.size() > kMaxDigitRun && all_digits(cur)))
            out.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        if (is_alnum(c))
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            flush();
    }
    flush();
    return out;
}

StopwordList StopwordList::parse(std::string_view content) {
    StringSet words;
    std::istringstream in{std::string(content)};
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string w = line.substr(b, e - b + 1);
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(std::move(w));
    }
    return StopwordList(std::move(words));
}

StopwordList StopwordList::english() {
    static const StopwordList list = parse(detail::kEnglishStopwords);
    return list;
}

StopwordList StopwordList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword list: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<AnalyzedToken> Analyzer::analyze_with_surface(std::string_view text) const {
    std::vector<AnalyzedToken> out;
    for (auto& w : tokenize(text)) {
        if (is_stopword(w)) continue;
        std::string term = term_for(w);
        out.push_back({std::move(w), std::move(term)});
    }
    return out;
}

std::vector<std::string> Analyzer::analyze(std::string_view text) const {
    std::vector<std::string> out;
    for (auto& w : tokenize(text)) {
        if (is_stopword(w)) continue;
        out.push_back(term_for(w));
    }
    return out;
}

std::vector<std::string> Analyzer::content_words(std::string_view text) const {
    std::vector<std::string> out;
    for (auto& w : tokenize(text))
        if (!is_stopword(w)) out.push_back(std::move(w));
    return out;
}

}  // namespace glossqe
