// morphism.hpp -- morphisms, fixed-point prefixes, prefix-code cuts, and
// stabilized factor sets of morphic words.

#pragma once

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "urtlab/word.hpp"

namespace urt {

class Morphism {
public:
    /// images[i] is the image of letter i+1; every image must be nonempty.
    Morphism(std::vector<Word> images, int codomain_size);

    int domain_size() const { return static_cast<int>(images_.size()); }
    int codomain_size() const { return codomain_; }
    const Word& image(Letter a) const;

    /// Common image length when the morphism is uniform, otherwise 0.
    int uniform_length() const { return uniform_; }
    /// Longest common prefix of all images.
    const Word& common_prefix() const { return lcp_; }
    Letter final_letter(Letter a) const;
    int max_image_length() const { return max_image_; }

    bool prolongable_on(Letter seed) const;

private:
    std::vector<Word> images_;
    int codomain_ = 0;
    int uniform_ = 0;
    int max_image_ = 0;
    Word lcp_;
};

Word apply(const Morphism& h, const Word& w);

// Lazily generated prefix of the fixed point h^omega(seed). The expansion
// frontier is memoized, so repeated calls with growing n cost amortized
// linear time. Extension is serialized internally; prefix() returns a copy
// and is safe to call concurrently.
class FixedPointStream {
public:
    FixedPointStream(Morphism h, Letter seed);

    Word prefix(std::size_t n);
    Letter seed() const { return seed_; }

private:
    void extend(std::size_t n);

    Morphism h_;
    Letter seed_;
    std::string buffer_;
    std::size_t expand_pos_ = 1;
    std::mutex mu_;
};

/// Length-n prefix of h^omega(seed). Requires h(seed) to begin with seed
/// and have length at least 2.
Word fixed_point_prefix(const Morphism& h, Letter seed, std::size_t n);

// Letter-by-letter traversal of h^omega(seed) in logarithmic memory: the
// fixed point is h(seed) followed by the waves h^d(u) for d = 1, 2, ...
// where u is h(seed) without its leading letter; each wave is walked as a
// depth-d expansion tree.
class FixedPointCursor {
public:
    FixedPointCursor(Morphism h, Letter seed);

    Letter next();

private:
    struct Frame {
        Letter a;
        std::size_t child;
    };

    Morphism h_;
    Word tail_;  // h(seed) minus the seed letter
    std::string head_;
    std::size_t head_pos_ = 0;
    std::size_t tail_pos_ = 0;
    int depth_ = 1;
    std::vector<Frame> stack_;
};

enum class BuiltinMorphism { f24, f4, f8, f12, g };

/// The built-in morphisms, stored as literal tables. f24 is the 24-uniform
/// ternary morphism behind the 7/4+ construction (its table is conventionally
/// written over {0,1,2}; letters here are shifted to {1,2,3}). f4, f8, f12
/// are the binary morphisms behind the (k-1)/(k-2)+ constructions and g is
/// the binary-to-ternary encoding morphism.
const Morphism& builtin(BuiltinMorphism which);
const Morphism& builtin_by_name(const std::string& name);

/// Images rendered with the conventional digits of the published tables
/// (0-based for f24, 1-based otherwise). Used by checksum tests.
std::string builtin_table_digits(BuiltinMorphism which, Letter a);

/// Parses lines of the form "letter -> image" (word text format).
Morphism parse_morphism_file(const std::string& path);

using PrefixCode = std::vector<Word>;

PrefixCode blocks_of(const Morphism& h);

// A cut of w over a prefix code P is a split position i such that for
// every context p, s with p w s in P+, the word p.w[0..i) lies in P*.
// Computation enumerates context prefixes p from P*.Pref(P) up to a radius
// of twice the maximal block length; suffix contexts do not need
// enumeration because extendability on the right is decided by the parse
// state set. The codes used here are synchronizing well within that
// radius, which is re-checked on every call by widening the radius one
// block and asserting the result is unchanged.
std::vector<int> cuts(const Word& w, const PrefixCode& code);

/// True iff w has no cut over the code (end positions count).
bool cut_free(const Word& w, const PrefixCode& code);

struct WordNotInCode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterate h^m(seed) until the factor set restricted to lengths <= max_len
// is identical for consecutive iterates and the prefix is at least
// 2*max_len*r letters long (r = max image length). For the primitive
// uniform morphisms used here the certified prefix then carries every
// factor of h^omega(seed) of length <= max_len.
struct StabilizedPrefix {
    Word prefix;  // h^level(seed)
    int level = 0;
};

StabilizedPrefix stabilize_factors(const Morphism& h, Letter seed, int max_len,
                                   int iteration_cap = 24,
                                   std::size_t length_cap = std::size_t(1) << 26);

struct StableFactorSet {
    std::set<Word> factors;  // every factor of h^omega(seed) with length <= max_len
    int level = 0;           // factors realized inside h^level(seed)
};

StableFactorSet stable_factor_set(const Morphism& h, Letter seed, int max_len);

}  // namespace urt
