#pragma once

#include "wkat/semiring.hpp"
#include "wkat/syntax.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wkat {

// A word of either carrier as a flat symbol sequence. Guarded strings store
// atom codes at even positions and action indices at odd positions.
using Word = std::vector<std::uint16_t>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

// G1 a1 G2 ... a(k-1) Gk. Never empty: the shortest guarded string is one atom.
class GuardedString {
public:
    explicit GuardedString(Atom atom);
    GuardedString(const std::vector<Atom>& atoms, const std::vector<Symbol>& letters);
    // Adopts an encoded word; throws StructuralError on a malformed shape.
    GuardedString(Word word, unsigned atom_width);

    [[nodiscard]] std::size_t length() const noexcept { return (word_.size() + 1) / 2; }
    [[nodiscard]] Atom atom(std::size_t i) const { return {word_.at(2 * i), width_}; }
    [[nodiscard]] Symbol letter(std::size_t i) const { return word_.at(2 * i + 1); }
    [[nodiscard]] Atom head() const { return atom(0); }
    [[nodiscard]] Atom tail() const { return atom(length() - 1); }
    [[nodiscard]] const Word& word() const noexcept { return word_; }
    [[nodiscard]] unsigned atom_width() const noexcept { return width_; }

    friend bool operator==(const GuardedString&, const GuardedString&) = default;

private:
    Word word_;
    unsigned width_ = 0;
};

// sigma <> sigma' : defined iff tail(sigma) = head(sigma').
[[nodiscard]] std::optional<GuardedString> fusion(const GuardedString& a, const GuardedString& b);

[[nodiscard]] std::string print(const GuardedString& w, const Alphabets& alphabets);

enum class Carrier : std::uint8_t { Guarded, Free };

// Which words a truncated series ranges over. For the guarded carrier
// `letters` is |Sigma| and the bound counts atoms; for the free carrier
// `letters` is the alphabet size and the bound counts letters.
struct CarrierSpec {
    Carrier kind = Carrier::Guarded;
    unsigned atom_width = 0;
    std::size_t letters = 0;
    std::size_t bound = 0;

    friend bool operator==(const CarrierSpec&, const CarrierSpec&) = default;

    [[nodiscard]] static CarrierSpec guarded(const Alphabets& alphabets, std::size_t bound);
    // Free monoid over Sigma u Lambda (see free_letter()).
    [[nodiscard]] static CarrierSpec free_over_literals(const Alphabets& alphabets, std::size_t bound);

    [[nodiscard]] std::size_t length(const Word& w) const noexcept {
        return kind == Carrier::Guarded ? (w.size() + 1) / 2 : w.size();
    }
    [[nodiscard]] std::size_t atoms() const noexcept { return std::size_t{1} << atom_width; }
};

inline constexpr std::size_t default_bound = 4;
inline constexpr std::size_t max_carrier_words = 4'000'000;

// Letter indices of the free alphabet Sigma u Lambda: actions first, then
// p_i at |Sigma| + 2i and ~p_i at |Sigma| + 2i + 1.
[[nodiscard]] std::uint16_t free_letter_action(const Alphabets& alphabets, Symbol a);
[[nodiscard]] std::uint16_t free_letter_literal(const Alphabets& alphabets, Symbol p, bool positive);
[[nodiscard]] std::string free_letter_name(const Alphabets& alphabets, std::uint16_t letter);
// The guarded string written out letter by letter over Sigma u Lambda.
[[nodiscard]] Word spell(const GuardedString& w, const Alphabets& alphabets);

// All two-way splittings w = v1 <> v2 (guarded) or w = v1 v2 (free).
[[nodiscard]] std::vector<std::pair<Word, Word>> factorizations(const Word& w, Carrier kind);

// Number of carrier words of length <= bound; throws ResourceError past max_carrier_words.
[[nodiscard]] std::size_t count_words(const CarrierSpec& spec);
// Every carrier word of length <= bound, shortest first, lexicographic within a length.
[[nodiscard]] std::vector<Word> enumerate_words(const CarrierSpec& spec);

// Canonical ordering of words used by every printed report.
[[nodiscard]] bool word_less(const Word& a, const Word& b);

// A weighted language restricted to words of length <= bound. Exact: the
// coefficient of every in-bound word equals that of the untruncated series,
// because factors of a word are never longer than the word itself.
class TruncatedSeries {
public:
    using Map = std::unordered_map<Word, Elem, WordHash>;

    TruncatedSeries(CarrierSpec spec, SemiringRef semiring);

    [[nodiscard]] const CarrierSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }
    [[nodiscard]] Elem at(const Word& w) const;
    // Stores w -> s (erasing when s is zero). Throws when w exceeds the bound.
    void set(const Word& w, Elem s);
    [[nodiscard]] const Map& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t support_size() const noexcept { return coeffs_.size(); }
    // Nonzero entries in canonical word order.
    [[nodiscard]] std::vector<std::pair<Word, Elem>> sorted() const;

    // Entries of length <= bound only.
    [[nodiscard]] TruncatedSeries restrict(std::size_t bound) const;

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    CarrierSpec spec_;
    SemiringRef semiring_;
    Map coeffs_;
};

[[nodiscard]] TruncatedSeries zero_series(const CarrierSpec& spec, SemiringRef semiring);
// Atoms (guarded) or the empty word (free) with weight one.
[[nodiscard]] TruncatedSeries unit_series(const CarrierSpec& spec, SemiringRef semiring);

[[nodiscard]] TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
[[nodiscard]] TruncatedSeries series_scalar(const TruncatedSeries& r, Elem s);
[[nodiscard]] TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
// Least fixpoint of X -> 1 + r X, iterated from zero until a step changes nothing.
[[nodiscard]] TruncatedSeries series_star(const TruncatedSeries& r);
// Pointwise a(w) <= b(w) in the semiring order.
[[nodiscard]] bool series_leq(const TruncatedSeries& a, const TruncatedSeries& b);

// Standard guarded-language interpretation, exact up to `bound` atoms.
[[nodiscard]] TruncatedSeries interp_guarded(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                                             std::size_t bound);
// Standard free-monoid interpretation over Sigma u Lambda, literals read as
// letters, exact up to `bound` letters.
[[nodiscard]] TruncatedSeries interp_free(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                                          std::size_t bound);

// "w  s" lines for every nonzero coefficient, canonical order.
[[nodiscard]] std::string format_series(const TruncatedSeries& r, const Alphabets& alphabets);
[[nodiscard]] std::string format_word(const Word& w, const CarrierSpec& spec, const Alphabets& alphabets);

} // namespace wkat
