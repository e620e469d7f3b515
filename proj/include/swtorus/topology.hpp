#pragma once

// Exact integer arithmetic for intersection forms of closed 4-manifolds: the E8 and
// hyperbolic forms, signature and parity, characteristic elements, the expected dimension
// of the Seiberg-Witten moduli space and the Furuta and Freed bounds for spin forms.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace swtorus {

using BigInt = boost::multiprecision::cpp_int;

// Invalid topological input: a non-symmetric matrix, inconsistent invariants, a class
// that cannot be a characteristic element, or an unparseable form expression.
class TopologyInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IntegerForm {
public:
    IntegerForm() = default;
    // Throws TopologyInputError unless m is square and symmetric, and, when
    // requireUnimodular is set, unless |det m| = 1.
    explicit IntegerForm(std::vector<std::vector<std::int64_t>> m, bool requireUnimodular = false);

    int rank() const { return static_cast<int>(m_.size()); }
    std::int64_t operator()(int i, int j) const {
        return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const std::vector<std::vector<std::int64_t>>& matrix() const { return m_; }
    // c . Q c.
    BigInt square(const std::vector<std::int64_t>& c) const;

    friend bool operator==(const IntegerForm&, const IntegerForm&) = default;

private:
    std::vector<std::vector<std::int64_t>> m_;
};

IntegerForm directSum(const IntegerForm& a, const IntegerForm& b);

// The Gram matrix of the E8 Dynkin diagram, a chain of seven nodes with the eighth attached
// to the fifth: diagonal -2 and +1 on edges when negative definite, the negation otherwise.
IntegerForm e8Form(bool negativeDefinite = true);
IntegerForm hForm();
// 2k copies of E8 followed by l copies of H. Throws std::invalid_argument if k or l < 0.
IntegerForm spinForm(int k, int l);

BigInt determinant(const IntegerForm& q);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

// Counts of positive, negative and zero pivots of an exact congruence diagonalisation.
Inertia inertia(const IntegerForm& q);
int signature(const IntegerForm& q);
bool isEven(const IntegerForm& q);
// c . a = a . a mod 2 for every basis vector a. Throws TopologyInputError on a length mismatch.
bool isCharacteristic(const IntegerForm& q, const std::vector<std::int64_t>& c);

struct CharacteristicClass {
    std::vector<std::int64_t> c;
    BigInt square;
};

// Throws TopologyInputError if c is not characteristic for q.
CharacteristicClass characteristicClass(const IntegerForm& q, std::vector<std::int64_t> c);

struct ManifoldInvariants {
    std::int64_t chi = 0;
    std::int64_t sigma = 0;
    std::int64_t bPlus = 0;
    std::int64_t b1 = 0;

    // chi - 2 + 2 b1 - bPlus.
    std::int64_t bMinus() const { return chi - 2 + 2 * b1 - bPlus; }
    // Throws TopologyInputError unless bPlus, b1, bMinus >= 0 and sigma = bPlus - bMinus.
    void validate() const;
};

// (c1^2 - (2 chi + 3 sigma)) / 4, cross-checked against (c1^2 - sigma) / 4 - (1 - b1 + bPlus).
// Throws TopologyInputError if c1^2 != sigma mod 8 or the numerator is not divisible by 4,
// with the residues in the message.
std::int64_t moduliDimension(std::int64_t c1Squared, const ManifoldInvariants& inv);

struct FurutaResult {
    bool passes;
    std::int64_t minL;  // 2k + 1
};

// Whether 2k E8 + l H satisfies l >= 2k + 1. Throws std::invalid_argument if k < 1, where
// the form is l H and the bound does not apply, or if l < 0.
FurutaResult furutaBound(std::int64_t k, std::int64_t l);

struct FreedResult {
    bool divides;
    std::int64_t equivalentBound;  // 2k
};

// Whether 4^(k+y) 2^x divides 4^y 2^(l+x), decided by big-integer division and checked
// against the exponent inequality l >= 2k. Throws std::invalid_argument on a negative input or
// one above 100000, and std::logic_error if the two decisions differ.
FreedResult freedDivisibility(std::int64_t k, std::int64_t x, std::int64_t y, std::int64_t l);

struct ElevenEighthsGap {
    std::int64_t conjectureMinL;  // 3k
    std::int64_t furutaMinL;      // 2k + 1
    std::int64_t gap;             // k - 1
    bool meetsConjecture;         // l >= 3k
    bool meetsFuruta;             // l >= 2k + 1
};

// Throws std::invalid_argument if k < 1 or l < 0.
ElevenEighthsGap elevenEighthsGap(std::int64_t k, std::int64_t l);

struct ParsedForm {
    std::int64_t e8Copies = 0;
    std::int64_t hCopies = 0;
    IntegerForm form;
};

// Parses sums of terms `[n]E8` and `[n]H`, e.g. "E8", "H", "2E8+3H", "2 E8 + 3 H".
// Throws TopologyInputError with the offending position on malformed input.
ParsedForm parseForm(const std::string& text);

}  // namespace swtorus
