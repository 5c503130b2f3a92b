#include "pcpa/gf2.hpp"

namespace pcpa {

std::string point_to_string(Point z, int m) {
    if (m < 1 || m > kMaxAmbientDim) throw std::invalid_argument("point_to_string: bad m");
    std::string s(static_cast<std::size_t>(m), '0');
    for (int j = 0; j < m; ++j)
        if ((z >> (m - 1 - j)) & 1u) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

Point point_from_string(const std::string& text) {
    if (text.empty() || text.size() > kMaxAmbientDim)
        throw data_error("point string has bad width: '" + text + "'");
    Point z = 0;
    for (char c : text) {
        if (c != '0' && c != '1') throw data_error("point string has non-binary character: '" + text + "'");
        z = (z << 1) | static_cast<Point>(c == '1');
    }
    return z;
}

std::string word_to_string(const Word& w) {
    std::string s(w.size(), '0');
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) s[i] = '1';
    return s;
}

Word word_from_string(const std::string& text) {
    Word w(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '0' && c != '1') throw data_error("word string has non-binary character");
        w[i] = c == '1' ? 1 : 0;
    }
    return w;
}

}  // namespace pcpa
