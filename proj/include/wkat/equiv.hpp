#pragma once

#include "wkat/normal_form.hpp"
#include "wkat/relational.hpp"
#include "wkat/series.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wkat {

// Either a distinguishing guarded string or agreement on every guarded
// string up to the bound. Agreement is evidence, never a proof.
struct EquivVerdict {
    std::size_t bound = 0;
    std::optional<Word> witness;
    Elem left = 0;
    Elem right = 0;

    [[nodiscard]] bool agrees() const noexcept { return !witness.has_value(); }
    // "AgreeUpTo(L)" or "Distinguisher <w>: s vs t".
    [[nodiscard]] std::string describe(const Alphabets& alphabets, const Semiring& semiring) const;
};

[[nodiscard]] EquivVerdict bounded_equiv(const Expr& e, const Expr& f, const Alphabets& alphabets,
                                         const SemiringRef& semiring, std::size_t bound);

inline constexpr const char* equiv_disclaimer =
    "note: agreement up to a bound is evidence, not a proof of equivalence; "
    "decidability of equivalence for these expressions is an open question.";

struct GenConfig {
    unsigned max_depth = 4;
    // Relative weights of action, test, scalar, sum, product and star nodes.
    unsigned w_action = 4;
    unsigned w_test = 2;
    unsigned w_scalar = 2;
    unsigned w_sum = 3;
    unsigned w_product = 3;
    unsigned w_star = 2;
    std::uint64_t seed = 42;
    // Transition systems: states in [1, max_states], each entry nonzero with
    // probability density_percent / 100.
    std::size_t max_states = 4;
    unsigned density_percent = 30;
};

// Deterministic pseudo-random streams for a fixed alphabet and semiring.
class Generator {
public:
    Generator(GenConfig config, Alphabets alphabets, SemiringRef semiring);

    [[nodiscard]] const GenConfig& config() const noexcept { return config_; }
    [[nodiscard]] const Alphabets& alphabets() const noexcept { return alphabets_; }
    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }

    // Uniform in [0, n).
    std::size_t below(std::size_t n);
    bool chance(unsigned percent);
    Elem element();
    Elem nonzero_element();

    // Depth 1 yields a letter or a constant.
    Expr expr();
    Expr expr(unsigned depth);
    TestExpr test(unsigned depth);
    TransitionSystem system();
    TransitionSystem system(std::size_t states);
    Matrix matrix(std::size_t states);
    TruncatedSeries series(const CarrierSpec& spec, std::size_t support);
    GuardedSum guarded_sum(const Normalizer& n, std::size_t summands);

private:
    GenConfig config_;
    Alphabets alphabets_;
    SemiringRef semiring_;
    std::mt19937_64 rng_;
};

struct AxiomTally {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    // Implications only: instances whose premise held.
    std::size_t premise_held = 0;
    bool implication = false;
    std::string first_witness;
};

struct SuiteReport {
    std::string suite;
    std::string semiring;
    std::size_t samples = 0;
    std::deque<AxiomTally> axioms; // stable references for tally()

    [[nodiscard]] bool ok() const noexcept;
    [[nodiscard]] std::size_t failures() const noexcept;
    [[nodiscard]] const AxiomTally* find(const std::string& name) const;
    AxiomTally& tally(const std::string& name, bool implication = false);
    [[nodiscard]] std::string text() const;
    [[nodiscard]] std::string json() const;
};

enum class ModelKind : std::uint8_t { Series, Matrix };

struct SuiteConfig {
    ModelKind model = ModelKind::Series;
    std::size_t samples = 200;
    std::size_t bound = 4;      // series model
    std::size_t max_states = 6; // matrix model
    GenConfig gen;
};

// Checks the Kleene algebra, semimodule, scalar and test laws on sampled
// valuations of the chosen model. Fixpoint laws are checked as implications;
// half of their samples are built so that the premise holds.
[[nodiscard]] SuiteReport axiom_suite(const Alphabets& alphabets, const SemiringRef& semiring,
                                      const SuiteConfig& config);

// Lemma harnesses over random expressions, each one tally per property.
[[nodiscard]] SuiteReport hat_soundness_suite(const Alphabets& alphabets, const SemiringRef& semiring,
                                              std::size_t samples, std::size_t systems, std::size_t bound,
                                              const GenConfig& gen);
[[nodiscard]] SuiteReport hat_properness_suite(const Alphabets& alphabets, const SemiringRef& semiring,
                                               std::size_t samples, std::size_t bound, const GenConfig& gen);
[[nodiscard]] SuiteReport guarded_star_suite(const Alphabets& alphabets, const SemiringRef& semiring,
                                             std::size_t samples, std::size_t bound, const GenConfig& gen);
[[nodiscard]] SuiteReport cayley_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                                       std::size_t bound, const GenConfig& gen);
[[nodiscard]] SuiteReport truncation_suite(const Alphabets& alphabets, const SemiringRef& semiring,
                                           std::size_t samples, std::size_t bound, const GenConfig& gen);

// Every suite above over the built-in semirings, as run by `selftest`.
[[nodiscard]] std::vector<SuiteReport> selftest(std::uint64_t seed, std::size_t samples);

} // namespace wkat
