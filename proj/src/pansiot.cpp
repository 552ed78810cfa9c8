#include "urtlab/pansiot.hpp"

#include <algorithm>

#include "json.hpp"
#include "urtlab/morphism.hpp"

namespace urt {

Permutation::Permutation(std::vector<uint8_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size() + 1, false);
    for (uint8_t v : image_) {
        if (v < 1 || v > image_.size() || seen[v])
            throw std::invalid_argument("permutation image is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<uint8_t> image(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) image[static_cast<std::size_t>(i)] = static_cast<uint8_t>(i + 1);
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<uint8_t> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        image[image_[i] - 1] = static_cast<uint8_t>(i + 1);
    return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i + 1) return false;
    return true;
}

std::uint64_t Permutation::packed() const {
    if (image_.size() > 16) throw std::invalid_argument("packing needs degree <= 16");
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < image_.size(); ++i)
        key |= static_cast<std::uint64_t>(image_[i] - 1) << (4 * i);
    return key;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
    std::vector<uint8_t> image(static_cast<std::size_t>(a.degree()));
    for (int i = 1; i <= b.degree(); ++i)
        image[static_cast<std::size_t>(i - 1)] = static_cast<uint8_t>(a.apply(b.apply(i)));
    return Permutation(std::move(image));
}

Parity parity(const Permutation& p) {
    int k = p.degree();
    std::vector<bool> visited(static_cast<std::size_t>(k) + 1, false);
    int cycles = 0;
    for (int i = 1; i <= k; ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        ++cycles;
        for (int j = i; !visited[static_cast<std::size_t>(j)]; j = p.apply(j))
            visited[static_cast<std::size_t>(j)] = true;
    }
    return (k - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

std::string to_string(const Permutation& p) {
    std::string out = "(";
    for (int i = 1; i <= p.degree(); ++i) {
        if (i > 1) out += " ";
        out += std::to_string(p.apply(i));
    }
    return out + ")";
}

std::array<Permutation, 3> sigma(int k) {
    if (k < 3) throw std::invalid_argument("sigma needs k >= 3");
    auto cycle_from = [k](int fixed) {
        std::vector<uint8_t> image(static_cast<std::size_t>(k));
        for (int i = 1; i <= fixed; ++i) image[static_cast<std::size_t>(i - 1)] = static_cast<uint8_t>(i);
        for (int i = fixed + 1; i < k; ++i)
            image[static_cast<std::size_t>(i - 1)] = static_cast<uint8_t>(i + 1);
        if (fixed < k) image[static_cast<std::size_t>(k - 1)] = static_cast<uint8_t>(fixed + 1);
        return Permutation(std::move(image));
    };
    // sigma(t) fixes 1..t-1 and cycles t..k by one step
    return {cycle_from(0), cycle_from(1), cycle_from(2)};
}

std::array<Permutation, 2> tau(int k) {
    std::array<Permutation, 3> s = sigma(k);
    const Morphism& g = builtin(BuiltinMorphism::g);
    return {eval_word(std::span<const Permutation>(s), g.image(1)),
            eval_word(std::span<const Permutation>(s), g.image(2))};
}

Permutation eval_word(std::span<const Permutation> mapping, const Word& t) {
    if (mapping.empty()) throw std::invalid_argument("empty permutation mapping");
    Permutation acc = Permutation::identity(mapping[0].degree());
    for (std::size_t i = 0; i < t.size(); ++i) {
        Letter c = t[i];
        if (c < 1 || static_cast<std::size_t>(c) > mapping.size())
            throw std::invalid_argument("letter outside the mapping domain");
        acc = compose(acc, mapping[static_cast<std::size_t>(c - 1)]);
    }
    return acc;
}

Permutation reversal_ranking_shift(int k) {
    if (k < 4) throw std::invalid_argument("reversal ranking shift needs k >= 4");
    std::vector<uint8_t> image(static_cast<std::size_t>(k));
    image[0] = 1;
    for (int j = 2; j <= k; ++j)
        image[static_cast<std::size_t>(j - 1)] = static_cast<uint8_t>(k + 2 - j);
    return Permutation(std::move(image));
}

namespace {

struct RankState {
    std::vector<uint8_t> ranks;  // ranks[j-1] = letter of rank j; rank k = most recent

    // Appending the letter of rank j moves it to the back.
    void advance(int j) {
        uint8_t c = ranks[static_cast<std::size_t>(j - 1)];
        ranks.erase(ranks.begin() + (j - 1));
        ranks.push_back(c);
    }

    int rank_of(Letter c) const {
        for (int j = 1; j <= static_cast<int>(ranks.size()); ++j)
            if (ranks[static_cast<std::size_t>(j - 1)] == c) return j;
        return 0;
    }
};

RankState ranking_state(const Word& prefix, int k) {
    if (k < 3) throw std::invalid_argument("ranking needs k >= 3");
    std::vector<char> present(static_cast<std::size_t>(k) + 1, 0);
    int distinct = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        Letter c = prefix[i];
        if (c > k) throw std::invalid_argument("letter outside alphabet");
        if (!present[static_cast<std::size_t>(c)]) {
            present[static_cast<std::size_t>(c)] = 1;
            ++distinct;
        }
    }
    if (distinct < k - 1)
        throw std::invalid_argument("ranking needs at least k-1 distinct letters in the prefix");

    RankState st;
    st.ranks.assign(static_cast<std::size_t>(k), 0);
    std::vector<char> in_suffix(static_cast<std::size_t>(k) + 1, 0);
    for (int j = 0; j < k - 2; ++j) {
        Letter c = prefix[prefix.size() - static_cast<std::size_t>(k - 2) + static_cast<std::size_t>(j)];
        if (in_suffix[static_cast<std::size_t>(c)])
            throw std::invalid_argument("final window of the prefix repeats a letter");
        in_suffix[static_cast<std::size_t>(c)] = 1;
        st.ranks[static_cast<std::size_t>(j + 2)] = static_cast<uint8_t>(c);
    }
    Letter rest[2];
    int nrest = 0;
    for (Letter c = 1; c <= k; ++c)
        if (!in_suffix[static_cast<std::size_t>(c)]) rest[nrest++] = c;
    // rank 2 is whichever of the two leftover letters appeared later
    Letter rank2 = 0, rank1 = 0;
    for (std::size_t i = prefix.size(); i-- > 0;) {
        Letter c = prefix[i];
        if (c == rest[0] || c == rest[1]) {
            rank2 = c;
            rank1 = c == rest[0] ? rest[1] : rest[0];
            break;
        }
    }
    if (rank2 == 0) throw std::invalid_argument("ranking is undefined for this prefix");
    st.ranks[0] = static_cast<uint8_t>(rank1);
    st.ranks[1] = static_cast<uint8_t>(rank2);
    return st;
}

}  // namespace

Permutation ranking_after(const Word& prefix, int k) {
    return Permutation(ranking_state(prefix, k).ranks);
}

std::string encoding_json(const EncodingResult& r) {
    nlohmann::ordered_json j;
    j["prefix"] = format_word(r.prefix_u);
    j["code"] = format_word(r.code);
    std::vector<int> ranking;
    for (int i = 1; i <= r.initial_ranking.degree(); ++i)
        ranking.push_back(r.initial_ranking.apply(i));
    j["ranking"] = ranking;
    return j.dump();
}

EncodingResult encode(const Word& w, int k) {
    if (k < 3) throw std::invalid_argument("encoding needs k >= 3");
    // reject words outside the encodable class, reporting the first bad window
    {
        std::vector<int> count(static_cast<std::size_t>(k) + 1, 0);
        int distinct = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (count[w[i]]++ == 0) ++distinct;
            if (i >= static_cast<std::size_t>(k)) {
                if (--count[w[i - static_cast<std::size_t>(k)]] == 0) --distinct;
            }
            std::size_t window = std::min(i + 1, static_cast<std::size_t>(k));
            if (window == static_cast<std::size_t>(k) && distinct < k - 1)
                throw EncodeError("length k window with fewer than k-1 distinct letters", i);
        }
    }
    {
        std::vector<int> count(static_cast<std::size_t>(k) + 1, 0);
        int distinct = 0;
        int win = k - 2;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (count[w[i]]++ == 0) ++distinct;
            if (i >= static_cast<std::size_t>(win)) {
                if (--count[w[i - static_cast<std::size_t>(win)]] == 0) --distinct;
            }
            if (i + 1 >= static_cast<std::size_t>(win) && distinct < win)
                throw EncodeError("length k-2 window with a repeated letter", i);
        }
    }

    std::size_t prefix_len = 0;
    {
        std::vector<char> present(static_cast<std::size_t>(k) + 1, 0);
        int distinct = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!present[w[i]]) {
                present[w[i]] = 1;
                ++distinct;
            }
            if (distinct == k - 1) {
                prefix_len = i + 1;
                break;
            }
        }
        if (prefix_len == 0)
            throw EncodeError("word has fewer than k-1 distinct letters", w.size());
    }

    EncodingResult out;
    out.prefix_u = w.prefix(prefix_len);
    RankState st = ranking_state(out.prefix_u, k);
    out.initial_ranking = Permutation(st.ranks);
    std::string code;
    code.reserve(w.size() - prefix_len);
    for (std::size_t i = prefix_len; i < w.size(); ++i) {
        int j = st.rank_of(w[i]);
        if (j < 1 || j > 3)
            throw EncodeError("letter falls outside the three oldest ranks", i);
        code.push_back(static_cast<char>(j));
        st.advance(j);
    }
    out.code = Word(std::move(code), 3);
    return out;
}

Word decode(const Word& prefix_u, const Word& code, int k, bool check_window_properties) {
    RankState st = ranking_state(prefix_u, k);
    Word w = prefix_u;
    if (w.alphabet_size() < k) w = Word(std::string(prefix_u.raw()), k);
    for (std::size_t i = 0; i < code.size(); ++i) {
        int t = code[i];
        if (t < 1 || t > 3) throw std::invalid_argument("code letters must be 1, 2 or 3");
        Letter c = st.ranks[static_cast<std::size_t>(t - 1)];
        w.push_back(c);
        st.advance(t);
    }
    if (check_window_properties && !window_properties(w, k))
        throw std::invalid_argument("decoded word violates the window properties");
    return w;
}

}  // namespace urt
