#include "gftree/patterns_io.hpp"
#include "gftree/errors.hpp"

#include <cctype>
#include <sstream>

namespace gftree {

Perm parse_perm(const std::string& s) {
    Perm p;
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw InvalidInput("unterminated bracket in pattern: " + s);
        std::string body = s.substr(1, s.size() - 2);
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream in(body);
        int v;
        while (in >> v) p.push_back(v);
        if (!in.eof()) throw InvalidInput("bad bracketed pattern: " + s);
    } else {
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
                throw InvalidInput("bad pattern character in: " + s);
            p.push_back(c - '0');
        }
    }
    if (p.empty()) throw InvalidInput("empty pattern");
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<size_t>(v - 1)])
            throw InvalidInput("not a permutation: " + s);
        seen[static_cast<size_t>(v - 1)] = true;
    }
    return p;
}

std::vector<Perm> parse_patterns(const std::string& s) {
    std::vector<Perm> out;
    std::string cur;
    bool in_bracket = false;
    for (char c : s) {
        if (c == '[') in_bracket = true;
        if (c == ']') in_bracket = false;
        if (c == ',' && !in_bracket) {
            out.push_back(parse_perm(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c)) || in_bracket) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(parse_perm(cur));
    if (out.empty()) throw InvalidInput("no patterns given");
    return out;
}

} // namespace gftree
