#include "swtorus/snapshot.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace swtorus {

namespace {

constexpr std::array<std::pair<FieldKind, std::string_view>, 6> kKinds{{
    {FieldKind::Scalar, "scalar"},
    {FieldKind::OneForm, "oneform"},
    {FieldKind::TwoForm, "twoform"},
    {FieldKind::SelfDual, "selfdual"},
    {FieldKind::SpinorPlus, "spinor+"},
    {FieldKind::SpinorMinus, "spinor-"},
}};

// 128^4 sites; a header beyond this is treated as corrupt rather than allocated.
constexpr double kMaxSites = 268435456.0;

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void fail(int line, const std::string& why) {
    throw SnapshotError("line " + std::to_string(line) + ": " + why, line);
}

std::vector<std::string_view> splitSpaces(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

double parseDouble(std::string_view tok, int line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = first + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(line, "not a decimal number: '" + std::string(tok) + "'");
    if (!std::isfinite(v)) fail(line, "non-finite value '" + std::string(tok) + "'");
    return v;
}

Complex parseComplex(std::string_view tok, int line) {
    const std::size_t comma = tok.find(',');
    if (comma == std::string_view::npos) fail(line, "expected a complex value re,im but found '" + std::string(tok) + "'");
    return {parseDouble(tok.substr(0, comma), line), parseDouble(tok.substr(comma + 1), line)};
}

void writeHeader(std::ostream& out, FieldKind kind, const Lattice& lat) {
    const auto& n = lat.dims();
    out << "swtorus-field v1 kind=" << kindName(kind) << " dims=" << n[0] << ',' << n[1] << ',' << n[2] << ',' << n[3]
        << " h=" << formatDouble(lat.spacing()) << '\n';
}

std::string complexToken(const Complex& z) { return formatDouble(z.real()) + ',' + formatDouble(z.imag()); }

template <class F, class Row>
void writeRows(std::ostream& out, FieldKind kind, const F& f, Row row) {
    writeHeader(out, kind, f.lattice());
    std::string line;
    for (const auto& v : f) {
        line.clear();
        row(v, line);
        out << line << '\n';
    }
}

template <std::size_t N>
void appendReals(const std::array<double, N>& v, std::string& line) {
    for (std::size_t i = 0; i < N; ++i) {
        if (i) line += ' ';
        line += formatDouble(v[i]);
    }
}

// Reads the header and then one line of tokens per site, handing each to `site`.
template <class F, class Site>
F readRows(std::istream& in, FieldKind kind, std::size_t tokens, Site site) {
    const SnapshotHeader h = readSnapshotHeader(in);
    if (h.kind != kind) fail(1, "expected kind=" + kindName(kind) + " but found kind=" + kindName(h.kind));
    F f(h.lattice);
    std::string text;
    int line = 1;
    for (std::size_t x = 0; x < f.size(); ++x) {
        ++line;
        if (!std::getline(in, text))
            fail(line, "file ends after " + std::to_string(x) + " of " + std::to_string(f.size()) + " sites");
        const auto toks = splitSpaces(text);
        if (toks.size() != tokens)
            fail(line, "expected " + std::to_string(tokens) + " components but found " + std::to_string(toks.size()));
        site(toks, line, f[x]);
    }
    while (std::getline(in, text)) {
        ++line;
        if (!splitSpaces(text).empty()) fail(line, "unexpected content after the last site");
    }
    return f;
}

}  // namespace

std::string kindName(FieldKind kind) {
    for (const auto& [k, name] : kKinds)
        if (k == kind) return std::string(name);
    throw std::logic_error("unknown field kind");
}

SnapshotError::SnapshotError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}

SnapshotHeader readSnapshotHeader(std::istream& in) {
    std::string text;
    if (!std::getline(in, text)) fail(1, "empty file, expected a swtorus-field header");
    const auto toks = splitSpaces(text);
    if (toks.size() != 5 || toks[0] != "swtorus-field")
        fail(1, "expected 'swtorus-field v1 kind=<kind> dims=n1,n2,n3,n4 h=<spacing>'");
    if (toks[1] != "v1") fail(1, "unsupported version '" + std::string(toks[1]) + "'");
    const auto value = [&](std::string_view tok, std::string_view key) {
        if (tok.substr(0, key.size()) != key) fail(1, "expected '" + std::string(key) + "' but found '" + std::string(tok) + "'");
        return tok.substr(key.size());
    };

    const std::string_view kindText = value(toks[2], "kind=");
    const FieldKind* kind = nullptr;
    for (const auto& entry : kKinds)
        if (entry.second == kindText) kind = &entry.first;
    if (!kind) fail(1, "unknown kind '" + std::string(kindText) + "'");

    std::string_view dimsText = value(toks[3], "dims=");
    std::array<int, 4> dims{};
    for (std::size_t mu = 0; mu < 4; ++mu) {
        const std::size_t comma = dimsText.find(',');
        if ((mu < 3) != (comma != std::string_view::npos)) fail(1, "dims must list exactly four extents");
        const std::string_view part = dimsText.substr(0, comma);
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), dims[mu]);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            fail(1, "bad extent '" + std::string(part) + "' in dims");
        dimsText = comma == std::string_view::npos ? std::string_view{} : dimsText.substr(comma + 1);
    }
    double sites = 1.0;
    for (int d : dims) sites *= d;
    if (sites > kMaxSites) fail(1, "lattice with " + formatDouble(sites) + " sites exceeds the snapshot limit");
    const double h = parseDouble(value(toks[4], "h="), 1);
    try {
        return {*kind, Lattice(dims, h)};
    } catch (const std::invalid_argument& e) {
        fail(1, e.what());
    }
}

void writeSnapshot(std::ostream& out, const RealScalarField& f) {
    writeRows(out, FieldKind::Scalar, f, [](double v, std::string& line) { line += formatDouble(v); });
}
void writeSnapshot(std::ostream& out, const ScalarField& f) {
    writeRows(out, FieldKind::Scalar, f, [](const Complex& v, std::string& line) { line += complexToken(v); });
}
void writeSnapshot(std::ostream& out, const OneForm& f) {
    writeRows(out, FieldKind::OneForm, f, [](const auto& v, std::string& line) { appendReals(v, line); });
}
void writeSnapshot(std::ostream& out, const TwoForm& f) {
    writeRows(out, FieldKind::TwoForm, f, [](const auto& v, std::string& line) { appendReals(v, line); });
}
void writeSnapshot(std::ostream& out, const SelfDualField& f) {
    writeRows(out, FieldKind::SelfDual, f, [](const auto& v, std::string& line) { appendReals(v, line); });
}
void writeSnapshot(std::ostream& out, const SpinorPlusField<>& f) {
    writeRows(out, FieldKind::SpinorPlus, f,
              [](const auto& v, std::string& line) { line += complexToken(v.z) + ' ' + complexToken(v.w); });
}
void writeSnapshot(std::ostream& out, const SpinorMinusField<>& f) {
    writeRows(out, FieldKind::SpinorMinus, f,
              [](const auto& v, std::string& line) { line += complexToken(v.z) + ' ' + complexToken(v.w); });
}

RealScalarField readRealScalarSnapshot(std::istream& in) {
    return readRows<RealScalarField>(in, FieldKind::Scalar, 1, [](const auto& t, int line, double& v) {
        if (t[0].find(',') != std::string_view::npos) fail(line, "expected a real scalar but found a complex value");
        v = parseDouble(t[0], line);
    });
}

ScalarField readScalarSnapshot(std::istream& in) {
    return readRows<ScalarField>(in, FieldKind::Scalar, 1, [](const auto& t, int line, Complex& v) {
        v = t[0].find(',') == std::string_view::npos ? Complex(parseDouble(t[0], line)) : parseComplex(t[0], line);
    });
}

namespace {
template <class F, std::size_t N>
F readReals(std::istream& in, FieldKind kind) {
    return readRows<F>(in, kind, N, [](const auto& t, int line, std::array<double, N>& v) {
        for (std::size_t i = 0; i < N; ++i) v[i] = parseDouble(t[i], line);
    });
}
template <class F>
F readSpinors(std::istream& in, FieldKind kind) {
    return readRows<F>(in, kind, 2, [](const auto& t, int line, auto& v) {
        v.z = parseComplex(t[0], line);
        v.w = parseComplex(t[1], line);
    });
}
}  // namespace

OneForm readOneFormSnapshot(std::istream& in) { return readReals<OneForm, 4>(in, FieldKind::OneForm); }
TwoForm readTwoFormSnapshot(std::istream& in) { return readReals<TwoForm, 6>(in, FieldKind::TwoForm); }
SelfDualField readSelfDualSnapshot(std::istream& in) { return readReals<SelfDualField, 3>(in, FieldKind::SelfDual); }
SpinorPlusField<> readSpinorPlusSnapshot(std::istream& in) {
    return readSpinors<SpinorPlusField<>>(in, FieldKind::SpinorPlus);
}
SpinorMinusField<> readSpinorMinusSnapshot(std::istream& in) {
    return readSpinors<SpinorMinusField<>>(in, FieldKind::SpinorMinus);
}

}  // namespace swtorus
