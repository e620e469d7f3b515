#pragma once

// Text snapshots of lattice fields. A header line
//   swtorus-field v1 kind=<kind> dims=n1,n2,n3,n4 h=<spacing>
// is followed by one line per site in lexicographic site order. Real components are written
// as decimal floats separated by spaces and complex components as `re,im`. Floats use 17
// significant digits, so a write followed by a read reproduces every value bit for bit.

#include "swtorus/field.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace swtorus {

enum class FieldKind { Scalar, OneForm, TwoForm, SelfDual, SpinorPlus, SpinorMinus };

std::string kindName(FieldKind kind);

// A malformed or unreadable snapshot. line() is the 1-based line of the fault, 0 when the
// file itself could not be opened or written; what() starts with "line N: " when N > 0.
class SnapshotError : public std::runtime_error {
public:
    SnapshotError(const std::string& what, int line);
    int line() const { return line_; }

private:
    int line_;
};

struct SnapshotHeader {
    FieldKind kind;
    Lattice lattice;
};

void writeSnapshot(std::ostream& out, const RealScalarField& f);  // kind=scalar, real values
void writeSnapshot(std::ostream& out, const ScalarField& f);      // kind=scalar, complex values
void writeSnapshot(std::ostream& out, const OneForm& f);
void writeSnapshot(std::ostream& out, const TwoForm& f);
void writeSnapshot(std::ostream& out, const SelfDualField& f);
void writeSnapshot(std::ostream& out, const SpinorPlusField<>& f);
void writeSnapshot(std::ostream& out, const SpinorMinusField<>& f);

// Each reader checks the header kind. A complex scalar reader also accepts real values.
RealScalarField readRealScalarSnapshot(std::istream& in);
ScalarField readScalarSnapshot(std::istream& in);
OneForm readOneFormSnapshot(std::istream& in);
TwoForm readTwoFormSnapshot(std::istream& in);
SelfDualField readSelfDualSnapshot(std::istream& in);
SpinorPlusField<> readSpinorPlusSnapshot(std::istream& in);
SpinorMinusField<> readSpinorMinusSnapshot(std::istream& in);

// Reads only the header line.
SnapshotHeader readSnapshotHeader(std::istream& in);

// File wrappers; failures to open or write raise SnapshotError with line 0.
template <class F>
void writeSnapshotFile(const std::string& path, const F& field) {
    std::ofstream out(path);
    if (!out) throw SnapshotError("cannot open " + path + " for writing", 0);
    writeSnapshot(out, field);
    out.flush();
    if (!out) throw SnapshotError("failed writing " + path, 0);
}

template <class F>
F readSnapshotFile(const std::string& path, F (*reader)(std::istream&)) {
    std::ifstream in(path);
    if (!in) throw SnapshotError("cannot open " + path, 0);
    try {
        return reader(in);
    } catch (const SnapshotError& e) {
        throw SnapshotError(path + ": " + e.what(), e.line());
    }
}

}  // namespace swtorus
