#pragma once

#include "wkat/semiring.hpp"
#include "wkat/series.hpp"
#include "wkat/syntax.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace wkat {

// Sparse square matrix over a semiring; zero entries are never stored.
class Matrix {
public:
    using Row = std::vector<std::pair<std::uint32_t, Elem>>; // sorted by column

    Matrix(std::size_t n, SemiringRef semiring);

    static Matrix identity(std::size_t n, SemiringRef semiring);
    static Matrix diagonal(const std::vector<bool>& on, SemiringRef semiring);
    // s on the whole diagonal.
    static Matrix scalar(std::size_t n, SemiringRef semiring, Elem s);

    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }
    [[nodiscard]] Elem at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Elem s);
    [[nodiscard]] const Row& row(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] std::size_t nonzeros() const noexcept;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    SemiringRef semiring_;
    std::vector<Row> rows_;
};

[[nodiscard]] Matrix mat_add(const Matrix& m, const Matrix& n);
[[nodiscard]] Matrix mat_mul(const Matrix& m, const Matrix& n);
// Entry-wise right multiplication by s, i.e. M times the all-s diagonal.
[[nodiscard]] Matrix mat_scalar(const Matrix& m, Elem s);
// Flips a diagonal 0/1 matrix.
[[nodiscard]] Matrix mat_complement(const Matrix& d);
// Least fixpoint of X -> I + M X.
[[nodiscard]] Matrix mat_star(const Matrix& m);
// Entry-wise order of the semiring.
[[nodiscard]] bool mat_leq(const Matrix& m, const Matrix& n);

class TransitionSystem {
public:
    TransitionSystem(Alphabets alphabets, SemiringRef semiring, std::vector<std::string> states);

    [[nodiscard]] const Alphabets& alphabets() const noexcept { return alphabets_; }
    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }
    [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] std::size_t state(const std::string& name) const;

    [[nodiscard]] const Matrix& rel(Symbol a) const { return rel_.at(a); }
    [[nodiscard]] Matrix& rel(Symbol a) { return rel_.at(a); }
    [[nodiscard]] const std::vector<bool>& sat(Symbol p) const { return sat_.at(p); }
    [[nodiscard]] std::vector<bool>& sat(Symbol p) { return sat_.at(p); }

private:
    Alphabets alphabets_;
    SemiringRef semiring_;
    std::vector<std::string> states_;
    std::vector<Matrix> rel_;
    std::vector<std::vector<bool>> sat_;
};

// Line format: `semiring NAME`, `states q0 q1 ...`, `rel a q q' s`,
// `sat p q1 q2 ...`; `#` starts a comment. When the file names no semiring
// `fallback` is used.
[[nodiscard]] TransitionSystem parse_transition_system(std::istream& in, const Alphabets& alphabets,
                                                       const SemiringRef& fallback);
[[nodiscard]] TransitionSystem parse_transition_system_string(const std::string& text, const Alphabets& alphabets,
                                                              const SemiringRef& fallback);
[[nodiscard]] TransitionSystem load_transition_system(const std::string& path, const Alphabets& alphabets,
                                                      const SemiringRef& fallback);
[[nodiscard]] std::string format_transition_system(const TransitionSystem& ts);

// M(e): homomorphic evaluation, memoised per expression node.
[[nodiscard]] Matrix eval_M(const TransitionSystem& ts, const Expr& e);
[[nodiscard]] Matrix eval_test(const TransitionSystem& ts, const TestExpr& b);

// "q -> q' : s" per nonzero entry, rows in state order, after a header line.
[[nodiscard]] std::string format_matrix(const Matrix& m, const std::vector<std::string>& states);

// The guarded strings of length <= bound, in canonical order, used as the
// state space of the Cayley system.
[[nodiscard]] std::vector<Word> cayley_states(const Alphabets& alphabets, std::size_t bound);

// cay(r)_{w,v} = r(u) when v = w <> u, zero otherwise.
[[nodiscard]] Matrix cayley_of_series(const TruncatedSeries& r, std::size_t bound);
[[nodiscard]] TransitionSystem cayley_system(const Alphabets& alphabets, const SemiringRef& semiring,
                                             std::size_t bound);

struct CayleyMismatch {
    std::string row;
    std::string column;
    std::string from_series;
    std::string from_system;
};

struct AgreementReport {
    std::size_t states = 0;
    std::size_t entries_compared = 0;
    std::vector<CayleyMismatch> mismatches; // first few only
    std::size_t mismatch_count = 0;

    [[nodiscard]] bool ok() const noexcept { return mismatch_count == 0; }
};

// Compares cay(G(e)) with M(e) on the Cayley system of the given bound.
[[nodiscard]] AgreementReport check_cayley(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                                           std::size_t bound);
[[nodiscard]] AgreementReport check_cayley(const Expr& e, const TransitionSystem& cayley, std::size_t bound);

} // namespace wkat
