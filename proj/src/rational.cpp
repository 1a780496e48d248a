#include "frobsplit/rational.hpp"

namespace frobsplit {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    auto parse_int = [](const std::string& s) -> Int {
        if (s.empty() || (s.size() == 1 && (s[0] == '+' || s[0] == '-')))
            throw ParseError("bad integer: '" + s + "'");
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (i == 0 && (c == '+' || c == '-')) continue;
            if (c < '0' || c > '9') throw ParseError("bad integer: '" + s + "'");
        }
        return Int(s);
    };
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rat(num, den);
}

} // namespace frobsplit
