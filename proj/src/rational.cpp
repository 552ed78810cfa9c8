#include "urtlab/rational.hpp"

#include <cctype>

namespace urt {

Rational parse_rational(const std::string& text) {
    std::size_t slash = text.find('/');
    auto parse_int = [&](const std::string& part) -> long long {
        if (part.empty()) throw std::invalid_argument("empty number in rational: '" + text + "'");
        for (char c : part) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("rational must be an integer or P/Q fraction, got '" +
                                            text + "'");
        }
        if (part.size() > 12) throw std::invalid_argument("rational out of range: '" + text + "'");
        return std::stoll(part);
    };
    if (slash == std::string::npos) return make_rational(parse_int(text), 1);
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Threshold make_threshold(const Rational& alpha, bool strict) {
    if (!(Rational{1, 1} < alpha && alpha <= Rational{2, 1}))
        throw std::invalid_argument("threshold must satisfy 1 < alpha <= 2, got " +
                                    to_string(alpha));
    return Threshold{alpha, strict};
}

}  // namespace urt
