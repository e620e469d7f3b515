#include "swtorus/topology.hpp"

#include "swtorus/scalar.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace swtorus {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix toRational(const IntegerForm& q) {
    const auto n = static_cast<std::size_t>(q.rank());
    RationalMatrix a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(q.matrix()[i][j]);
    return a;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Keeps the powers of two below a few hundred kilobytes.
constexpr std::int64_t kMaxFreedInput = 100000;

std::int64_t toInt64(const BigInt& v, const char* what) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw TopologyInputError(std::string(what) + " overflows 64 bits");
    return static_cast<std::int64_t>(v);
}

}  // namespace

IntegerForm::IntegerForm(std::vector<std::vector<std::int64_t>> m, bool requireUnimodular) : m_(std::move(m)) {
    for (std::size_t i = 0; i < m_.size(); ++i) {
        if (m_[i].size() != m_.size()) throw TopologyInputError("intersection form matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (m_[i][j] != m_[j][i]) {
                std::ostringstream os;
                os << "intersection form matrix is not symmetric at (" << i << ", " << j << ")";
                throw TopologyInputError(os.str());
            }
    }
    if (requireUnimodular) {
        const BigInt d = determinant(*this);
        if (d != 1 && d != -1) throw TopologyInputError("intersection form claimed unimodular has determinant " + d.str());
    }
}

BigInt IntegerForm::square(const std::vector<std::int64_t>& c) const {
    if (c.size() != m_.size()) throw TopologyInputError("class length does not match the rank of the form");
    BigInt s = 0;
    for (std::size_t i = 0; i < m_.size(); ++i)
        for (std::size_t j = 0; j < m_.size(); ++j) s += BigInt(c[i]) * m_[i][j] * c[j];
    return s;
}

IntegerForm directSum(const IntegerForm& a, const IntegerForm& b) {
    const auto na = static_cast<std::size_t>(a.rank()), nb = static_cast<std::size_t>(b.rank());
    std::vector<std::vector<std::int64_t>> m(na + nb, std::vector<std::int64_t>(na + nb, 0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) m[i][j] = a.matrix()[i][j];
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) m[na + i][na + j] = b.matrix()[i][j];
    return IntegerForm(std::move(m));
}

IntegerForm e8Form(bool negativeDefinite) {
    const std::int64_t s = negativeDefinite ? 1 : -1;
    std::vector<std::vector<std::int64_t>> m(8, std::vector<std::int64_t>(8, 0));
    for (std::size_t i = 0; i < 8; ++i) m[i][i] = -2 * s;
    const auto edge = [&](std::size_t i, std::size_t j) { m[i][j] = m[j][i] = s; };
    for (std::size_t i = 0; i + 1 < 7; ++i) edge(i, i + 1);
    edge(4, 7);
    return IntegerForm(std::move(m), true);
}

IntegerForm hForm() { return IntegerForm({{0, 1}, {1, 0}}, true); }

IntegerForm spinForm(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("spinForm needs k, l >= 0");
    IntegerForm q;
    const IntegerForm e8 = e8Form(), h = hForm();
    for (int i = 0; i < 2 * k; ++i) q = directSum(q, e8);
    for (int i = 0; i < l; ++i) q = directSum(q, h);
    return q;
}

BigInt determinant(const IntegerForm& q) {
    RationalMatrix a = toRational(q);
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    // The determinant of an integer matrix is an integer.
    return BigInt(numerator(det).str());
}

Inertia inertia(const IntegerForm& q) {
    // Symmetric elimination by congruences a -> P^T a P. A zero diagonal with a nonzero
    // off-diagonal entry a_ij is first repaired by adding row and column j to i, which makes
    // the new diagonal a_ii + 2 a_ij + a_jj or, failing that, a_ii - 2 a_ij + a_jj nonzero.
    RationalMatrix a = toRational(q);
    const std::size_t n = a.size();
    Inertia out;
    const auto addTo = [&](std::size_t i, std::size_t j, const Rational& f) {
        for (std::size_t k = 0; k < n; ++k) a[i][k] += f * a[j][k];
        for (std::size_t k = 0; k < n; ++k) a[k][i] += f * a[k][j];
    };
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][p] == 0) ++p;
        if (p < n && p != c) {
            std::swap(a[p], a[c]);
            for (auto& row : a) std::swap(row[p], row[c]);
        }
        if (a[c][c] == 0) {
            std::size_t j = c + 1;
            while (j < n && a[c][j] == 0) ++j;
            if (j == n) {
                ++out.zero;
                continue;
            }
            addTo(c, j, Rational(1));
            if (a[c][c] == 0) addTo(c, j, Rational(-2));
        }
        (a[c][c] > 0 ? out.positive : out.negative) += 1;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            addTo(r, c, -a[r][c] / a[c][c]);
        }
    }
    return out;
}

int signature(const IntegerForm& q) {
    const Inertia in = inertia(q);
    return in.positive - in.negative;
}

bool isEven(const IntegerForm& q) {
    for (int i = 0; i < q.rank(); ++i)
        if (mod(q(i, i), 2) != 0) return false;
    return true;
}

bool isCharacteristic(const IntegerForm& q, const std::vector<std::int64_t>& c) {
    if (static_cast<int>(c.size()) != q.rank())
        throw TopologyInputError("class length does not match the rank of the form");
    for (int a = 0; a < q.rank(); ++a) {
        std::int64_t dot = 0;
        for (int j = 0; j < q.rank(); ++j) dot += mod(c[static_cast<std::size_t>(j)], 2) * mod(q(a, j), 2);
        if (mod(dot - q(a, a), 2) != 0) return false;
    }
    return true;
}

CharacteristicClass characteristicClass(const IntegerForm& q, std::vector<std::int64_t> c) {
    if (!isCharacteristic(q, c)) throw TopologyInputError("class is not characteristic for the form");
    BigInt s = q.square(c);
    return {std::move(c), std::move(s)};
}

void ManifoldInvariants::validate() const {
    std::ostringstream os;
    if (bPlus < 0 || b1 < 0) os << "b+ and b1 must be non-negative";
    else if (bMinus() < 0) os << "chi = " << chi << " is too small for b+ = " << bPlus << " and b1 = " << b1 << " (b- = " << bMinus() << ")";
    else if (sigma != bPlus - bMinus())
        os << "sigma = " << sigma << " is inconsistent with b+ - b- = " << bPlus - bMinus();
    else return;
    throw TopologyInputError(os.str());
}

std::int64_t moduliDimension(std::int64_t c1Squared, const ManifoldInvariants& inv) {
    inv.validate();
    if (mod(c1Squared - inv.sigma, 8) != 0) {
        std::ostringstream os;
        os << "c1^2 = " << c1Squared << " is " << mod(c1Squared, 8) << " mod 8 but sigma = " << inv.sigma << " is "
           << mod(inv.sigma, 8) << " mod 8; c1 of a Spin_c structure is characteristic, so c1^2 = sigma mod 8";
        throw TopologyInputError(os.str());
    }
    const BigInt numerator = BigInt(c1Squared) - 2 * BigInt(inv.chi) - 3 * BigInt(inv.sigma);
    if (numerator % 4 != 0) {
        std::ostringstream os;
        os << "c1^2 - (2 chi + 3 sigma) = " << numerator << " is not divisible by 4";
        throw TopologyInputError(os.str());
    }
    const BigInt d = numerator / 4;
    const BigInt lastLine = (BigInt(c1Squared) - inv.sigma) / 4 - (1 - BigInt(inv.b1) + inv.bPlus);
    if (d != lastLine) throw std::logic_error("the two forms of the dimension formula disagree");
    return toInt64(d, "moduli dimension");
}

FurutaResult furutaBound(std::int64_t k, std::int64_t l) {
    if (k < 1) throw std::invalid_argument("the Furuta bound applies to k >= 1; with k = 0 the form is l H");
    if (l < 0) throw std::invalid_argument("l must be non-negative");
    return {l >= 2 * k + 1, 2 * k + 1};
}

FreedResult freedDivisibility(std::int64_t k, std::int64_t x, std::int64_t y, std::int64_t l) {
    if (k < 0 || x < 0 || y < 0 || l < 0) throw std::invalid_argument("freedDivisibility needs non-negative inputs");
    if (k > kMaxFreedInput || x > kMaxFreedInput || y > kMaxFreedInput || l > kMaxFreedInput)
        throw std::invalid_argument("freedDivisibility inputs are limited to " + std::to_string(kMaxFreedInput));
    const auto pow2 = [](std::int64_t e) { return BigInt(1) << static_cast<unsigned>(e); };
    const BigInt divisor = pow2(2 * (k + y)) * pow2(x);
    const BigInt dividend = pow2(2 * y) * pow2(l + x);
    const bool divides = dividend % divisor == 0;
    if (divides != (l >= 2 * k)) throw std::logic_error("big-integer divisibility disagrees with the exponent inequality");
    return {divides, 2 * k};
}

ElevenEighthsGap elevenEighthsGap(std::int64_t k, std::int64_t l) {
    if (k < 1) throw std::invalid_argument("elevenEighthsGap needs k >= 1");
    if (l < 0) throw std::invalid_argument("l must be non-negative");
    return {3 * k, 2 * k + 1, k - 1, l >= 3 * k, l >= 2 * k + 1};
}

ParsedForm parseForm(const std::string& text) {
    ParsedForm out;
    std::size_t i = 0;
    const auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "cannot parse form '" << text << "' at position " << i << ": " << why;
        throw TopologyInputError(os.str());
    };
    const auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    bool expectTerm = true;
    skip();
    if (i == text.size()) fail("empty expression");
    while (i < text.size()) {
        if (!expectTerm) {
            if (text[i] != '+') fail("expected '+'");
            ++i;
            skip();
            expectTerm = true;
            continue;
        }
        std::int64_t count = 1;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            count = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                count = count * 10 + (text[i] - '0');
                if (count > 1000) fail("multiplicity larger than 1000");
                ++i;
            }
            skip();
        }
        if (text.compare(i, 2, "E8") == 0) {
            out.e8Copies += count;
            i += 2;
        } else if (text.compare(i, 1, "H") == 0) {
            out.hCopies += count;
            i += 1;
        } else {
            fail("expected E8 or H");
        }
        skip();
        expectTerm = false;
    }
    if (expectTerm) fail("dangling '+'");
    const IntegerForm e8 = e8Form(), h = hForm();
    for (std::int64_t n = 0; n < out.e8Copies; ++n) out.form = directSum(out.form, e8);
    for (std::int64_t n = 0; n < out.hCopies; ++n) out.form = directSum(out.form, h);
    return out;
}

}  // namespace swtorus
