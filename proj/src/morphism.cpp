#include "urtlab/morphism.hpp"

#include <algorithm>
#include <bitset>
#include <fstream>
#include <optional>
#include <sstream>

#include "urtlab/suffix_automaton.hpp"

namespace urt {

Morphism::Morphism(std::vector<Word> images, int codomain_size)
    : images_(std::move(images)), codomain_(codomain_size) {
    if (images_.empty()) throw std::invalid_argument("morphism with empty domain");
    if (codomain_ < 1) throw std::invalid_argument("bad codomain size");
    for (const Word& im : images_) {
        if (im.empty()) throw std::invalid_argument("erasing morphism not supported");
        for (std::size_t i = 0; i < im.size(); ++i)
            if (im[i] > codomain_) throw std::invalid_argument("image letter outside codomain");
        max_image_ = std::max(max_image_, static_cast<int>(im.size()));
    }
    uniform_ = static_cast<int>(images_[0].size());
    for (const Word& im : images_)
        if (static_cast<int>(im.size()) != uniform_) uniform_ = 0;
    // longest common prefix of all images
    std::string lcp(images_[0].raw());
    for (const Word& im : images_) {
        std::size_t n = 0;
        while (n < lcp.size() && n < im.size() && lcp[n] == im.raw()[n]) ++n;
        lcp.resize(n);
    }
    lcp_ = Word(std::move(lcp), codomain_);
}

const Word& Morphism::image(Letter a) const {
    if (a < 1 || a > domain_size())
        throw std::invalid_argument("letter " + std::to_string(a) + " outside morphism domain");
    return images_[static_cast<std::size_t>(a - 1)];
}

Letter Morphism::final_letter(Letter a) const {
    const Word& im = image(a);
    return im[im.size() - 1];
}

bool Morphism::prolongable_on(Letter seed) const {
    if (seed < 1 || seed > domain_size()) return false;
    const Word& im = image(seed);
    return im.size() >= 2 && im[0] == seed;
}

Word apply(const Morphism& h, const Word& w) {
    std::string out;
    std::size_t total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) total += h.image(w[i]).size();
    out.reserve(total);
    for (std::size_t i = 0; i < w.size(); ++i) out.append(h.image(w[i]).raw());
    return Word(std::move(out), h.codomain_size());
}

FixedPointStream::FixedPointStream(Morphism h, Letter seed) : h_(std::move(h)), seed_(seed) {
    if (!h_.prolongable_on(seed))
        throw std::invalid_argument("morphism is not prolongable on letter " +
                                    std::to_string(seed));
    buffer_.assign(h_.image(seed_).raw());
}

void FixedPointStream::extend(std::size_t n) {
    // buffer_ is always h(first expand_pos_ letters of the fixed point),
    // which stays strictly longer than expand_pos_ for a prolongable seed.
    while (buffer_.size() < n) {
        Letter c = static_cast<unsigned char>(buffer_[expand_pos_]);
        buffer_.append(h_.image(c).raw());
        ++expand_pos_;
    }
}

Word FixedPointStream::prefix(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    extend(n);
    return Word(buffer_.substr(0, n), h_.codomain_size());
}

Word fixed_point_prefix(const Morphism& h, Letter seed, std::size_t n) {
    return FixedPointStream(h, seed).prefix(n);
}

FixedPointCursor::FixedPointCursor(Morphism h, Letter seed) : h_(std::move(h)) {
    if (!h_.prolongable_on(seed))
        throw std::invalid_argument("morphism is not prolongable on letter " +
                                    std::to_string(seed));
    const Word& im = h_.image(seed);
    head_.assign(im.raw());
    tail_ = im.subword(1, im.size() - 1);
}

Letter FixedPointCursor::next() {
    if (head_pos_ < head_.size())
        return static_cast<unsigned char>(head_[head_pos_++]);
    for (;;) {
        if (stack_.empty()) {
            if (tail_pos_ == tail_.size()) {
                tail_pos_ = 0;
                ++depth_;
            }
            stack_.push_back({tail_[tail_pos_++], 0});
        }
        std::size_t below = static_cast<std::size_t>(depth_) - (stack_.size() - 1);
        if (below == 0) {
            Letter out = stack_.back().a;
            stack_.pop_back();
            while (!stack_.empty()) {
                Frame& f = stack_.back();
                const Word& im = h_.image(f.a);
                if (++f.child < im.size()) {
                    stack_.push_back({im[f.child], 0});
                    break;
                }
                stack_.pop_back();
            }
            return out;
        }
        stack_.push_back({h_.image(stack_.back().a)[0], 0});
    }
}

namespace {

constexpr const char* kF24Table[3] = {
    "012021201021012102120210",
    "120102012102120210201021",
    "201210120210201021012102",
};

Word word_from_table(const char* digits, int shift, int codomain) {
    std::string raw;
    for (const char* p = digits; *p; ++p) raw.push_back(static_cast<char>(*p - '0' + shift));
    return Word(std::move(raw), codomain);
}

Morphism make_builtin(BuiltinMorphism which) {
    switch (which) {
        case BuiltinMorphism::f24:
            // table conventionally written over {0,1,2}; stored over {1,2,3}
            return Morphism({word_from_table(kF24Table[0], 1, 3), word_from_table(kF24Table[1], 1, 3),
                             word_from_table(kF24Table[2], 1, 3)},
                            3);
        case BuiltinMorphism::f4:
            return Morphism({word_from_table("121", 0, 2), word_from_table("122", 0, 2)}, 2);
        case BuiltinMorphism::f8:
            return Morphism({word_from_table("121212112122121", 0, 2),
                             word_from_table("211212122122112", 0, 2)},
                            2);
        case BuiltinMorphism::f12:
            return Morphism({word_from_table("121212121211212122121", 0, 2),
                             word_from_table("212122112121121212212", 0, 2)},
                            2);
        case BuiltinMorphism::g:
            return Morphism({word_from_table("31", 0, 3), word_from_table("312", 0, 3)}, 3);
    }
    throw std::invalid_argument("unknown builtin morphism");
}

}  // namespace

const Morphism& builtin(BuiltinMorphism which) {
    static const Morphism f24 = make_builtin(BuiltinMorphism::f24);
    static const Morphism f4 = make_builtin(BuiltinMorphism::f4);
    static const Morphism f8 = make_builtin(BuiltinMorphism::f8);
    static const Morphism f12 = make_builtin(BuiltinMorphism::f12);
    static const Morphism g = make_builtin(BuiltinMorphism::g);
    switch (which) {
        case BuiltinMorphism::f24: return f24;
        case BuiltinMorphism::f4: return f4;
        case BuiltinMorphism::f8: return f8;
        case BuiltinMorphism::f12: return f12;
        case BuiltinMorphism::g: return g;
    }
    throw std::invalid_argument("unknown builtin morphism");
}

const Morphism& builtin_by_name(const std::string& name) {
    if (name == "f24") return builtin(BuiltinMorphism::f24);
    if (name == "f4") return builtin(BuiltinMorphism::f4);
    if (name == "f8") return builtin(BuiltinMorphism::f8);
    if (name == "f12") return builtin(BuiltinMorphism::f12);
    if (name == "g") return builtin(BuiltinMorphism::g);
    throw std::invalid_argument("unknown morphism name '" + name + "'");
}

std::string builtin_table_digits(BuiltinMorphism which, Letter a) {
    const Morphism& h = builtin(which);
    const Word& im = h.image(a);
    int shift = which == BuiltinMorphism::f24 ? 1 : 0;
    std::string out;
    for (std::size_t i = 0; i < im.size(); ++i)
        out.push_back(static_cast<char>('0' + im[i] - shift));
    return out;
}

Morphism parse_morphism_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open morphism file '" + path + "'");
    std::vector<std::pair<int, std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::runtime_error("expected 'letter -> image' in morphism file: " + line);
        int letter = std::stoi(line.substr(0, arrow));
        rows.emplace_back(letter, line.substr(arrow + 2));
    }
    if (rows.empty()) throw std::runtime_error("empty morphism file");
    int domain = 0;
    for (auto& [a, _] : rows) domain = std::max(domain, a);
    std::vector<Word> images(static_cast<std::size_t>(domain));
    std::vector<bool> seen(static_cast<std::size_t>(domain), false);
    int codomain = 1;
    for (auto& [a, text] : rows) {
        if (a < 1) throw std::runtime_error("letters must be >= 1");
        Word im = parse_word(text.find_first_not_of(" \t") == std::string::npos
                                 ? text
                                 : text.substr(text.find_first_not_of(" \t")),
                             255);
        for (std::size_t i = 0; i < im.size(); ++i) codomain = std::max(codomain, im[i]);
        images[static_cast<std::size_t>(a - 1)] = std::move(im);
        seen[static_cast<std::size_t>(a - 1)] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::runtime_error("missing image for letter " + std::to_string(i + 1));
    std::vector<Word> fixed;
    fixed.reserve(images.size());
    for (Word& im : images) fixed.emplace_back(std::string(im.raw()), codomain);
    return Morphism(std::move(fixed), codomain);
}

PrefixCode blocks_of(const Morphism& h) {
    PrefixCode code;
    for (Letter a = 1; a <= h.domain_size(); ++a) {
        const Word& im = h.image(a);
        if (std::find(code.begin(), code.end(), im) == code.end()) code.push_back(im);
    }
    return code;
}

namespace {

// NFA whose states are "at a block boundary" (state 0) or "offset j inside
// block i" (0 < j < |block i|). A set of states is a 128-bit mask.
class ParseStates {
public:
    using Mask = std::bitset<128>;

    explicit ParseStates(const PrefixCode& code) : code_(&code) {
        for (const Word& b : code) {
            if (b.empty()) throw std::invalid_argument("empty code word");
            base_.push_back(states_);
            states_ += static_cast<int>(b.size()) - 1;
            alphabet_ = std::max(alphabet_, b.alphabet_size());
        }
        ++states_;  // account for the boundary state 0; offsets start at 1
        if (states_ > 128) throw std::invalid_argument("code too large for cut computation");
        next_.assign(static_cast<std::size_t>(states_) * alphabet_, Mask{});
        for (std::size_t i = 0; i < code.size(); ++i) {
            const Word& b = code[i];
            for (std::size_t j = 0; j < b.size(); ++j) {
                int from = j == 0 ? 0 : offset_state(i, j);
                int to = j + 1 == b.size() ? 0 : offset_state(i, j + 1);
                next_[static_cast<std::size_t>(from) * alphabet_ + (b[j] - 1)].set(
                    static_cast<std::size_t>(to));
            }
        }
    }

    Mask start() const {
        Mask m;
        m.set(0);
        return m;
    }

    Mask step(const Mask& m, Letter c) const {
        Mask out;
        if (c < 1 || c > alphabet_) return out;
        for (int s = 0; s < states_; ++s)
            if (m.test(static_cast<std::size_t>(s)))
                out |= next_[static_cast<std::size_t>(s) * alphabet_ + (c - 1)];
        return out;
    }

    Mask run(const Mask& m, std::string_view raw) const {
        Mask cur = m;
        for (char ch : raw) {
            if (cur.none()) break;
            cur = step(cur, static_cast<unsigned char>(ch));
        }
        return cur;
    }

    int alphabet() const { return alphabet_; }

private:
    int offset_state(std::size_t block, std::size_t j) const {
        return 1 + base_[block] + static_cast<int>(j) - 1;
    }

    const PrefixCode* code_;
    std::vector<int> base_;
    int states_ = 0;
    int alphabet_ = 0;
    std::vector<Mask> next_;
};

// All possible left contexts up to the radius: elements of P* followed by
// a proper prefix of a block (every prefix of a word of P+ has this shape).
std::vector<std::string> context_prefixes(const PrefixCode& code, int radius) {
    std::set<std::string> out;
    std::vector<std::string> chains{""};
    while (!chains.empty()) {
        std::vector<std::string> grown;
        for (const std::string& chain : chains) {
            out.insert(chain);
            for (const Word& b : code) {
                std::string_view raw = b.raw();
                for (std::size_t len = 1; len < raw.size(); ++len) {
                    if (chain.size() + len > static_cast<std::size_t>(radius)) break;
                    out.insert(chain + std::string(raw.substr(0, len)));
                }
                if (chain.size() + raw.size() <= static_cast<std::size_t>(radius))
                    grown.push_back(chain + std::string(raw));
            }
        }
        chains = std::move(grown);
    }
    return {out.begin(), out.end()};
}

std::optional<std::vector<int>> cuts_at_radius(const Word& w, const PrefixCode& code,
                                               const ParseStates& ps, int radius) {
    std::vector<std::string> prefixes = context_prefixes(code, radius);
    std::vector<char> allowed(w.size() + 1, 1);
    bool any_valid = false;
    std::vector<char> boundary(w.size() + 1, 0);
    for (const std::string& p : prefixes) {
        ParseStates::Mask m = ps.run(ps.start(), p);
        if (m.none()) continue;
        bool dead = false;
        boundary[0] = m.test(0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            m = ps.step(m, w[i]);
            boundary[i + 1] = m.test(0);
            if (m.none()) {
                dead = true;
                break;
            }
        }
        // dead means p.w extends no parse, so no context (p, s) exists
        if (dead) continue;
        any_valid = true;
        for (std::size_t i = 0; i <= w.size(); ++i)
            if (!boundary[i]) allowed[i] = 0;
    }
    if (!any_valid) return std::nullopt;
    std::vector<int> positions;
    for (std::size_t i = 0; i <= w.size(); ++i)
        if (allowed[i]) positions.push_back(static_cast<int>(i));
    return positions;
}

}  // namespace

std::vector<int> cuts(const Word& w, const PrefixCode& code) {
    // Parses over an ambiguous code are tracked as state sets, so distinct
    // nonempty blocks are all that is required here.
    if (code.empty()) throw std::invalid_argument("empty code");
    for (const Word& a : code)
        for (const Word& b : code)
            if (&a != &b && a == b) throw std::invalid_argument("repeated code word");
    ParseStates ps(code);
    int max_block = 0;
    for (const Word& b : code) max_block = std::max(max_block, static_cast<int>(b.size()));
    int radius = 2 * max_block;
    auto result = cuts_at_radius(w, code, ps, radius);
    if (!result) throw WordNotInCode("word is not a factor of any code concatenation");
    // The codes used here synchronize within the radius; re-check by
    // widening one block.
    auto wider = cuts_at_radius(w, code, ps, radius + max_block);
    if (!wider || *wider != *result)
        throw std::logic_error("cut computation did not stabilize at the context radius");
    return *result;
}

bool cut_free(const Word& w, const PrefixCode& code) { return cuts(w, code).empty(); }

StabilizedPrefix stabilize_factors(const Morphism& h, Letter seed, int max_len,
                                   int iteration_cap, std::size_t length_cap) {
    if (!h.prolongable_on(seed))
        throw std::invalid_argument("factor stabilization needs a prolongable seed");
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    std::size_t floor_len =
        2 * static_cast<std::size_t>(max_len) * static_cast<std::size_t>(h.max_image_length());
    Word prev = apply(h, Word({seed}, h.domain_size()));
    std::vector<long long> prev_counts =
        SuffixAutomaton(prev.raw(), h.codomain_size()).factor_counts(max_len);
    for (int m = 2; m <= iteration_cap; ++m) {
        if (prev.size() > length_cap)
            throw std::runtime_error("factor sets did not stabilize within the length cap");
        Word cur = apply(h, prev);
        std::vector<long long> counts =
            SuffixAutomaton(cur.raw(), h.codomain_size()).factor_counts(max_len);
        // prev is a prefix of cur, so equal counts mean equal factor sets
        if (counts == prev_counts && prev.size() >= floor_len)
            return StabilizedPrefix{std::move(prev), m - 1};
        prev = std::move(cur);
        prev_counts = std::move(counts);
    }
    throw std::runtime_error("factor sets did not stabilize within the iteration cap");
}

StableFactorSet stable_factor_set(const Morphism& h, Letter seed, int max_len) {
    StabilizedPrefix sp = stabilize_factors(h, seed, max_len);
    StableFactorSet out;
    out.level = sp.level;
    SuffixAutomaton sam(sp.prefix.raw(), h.codomain_size());
    sam.enumerate_factors(max_len, [&](const std::string& f) {
        out.factors.insert(Word(f, h.codomain_size()));
    });
    return out;
}

}  // namespace urt
