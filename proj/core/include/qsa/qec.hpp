#pragma once

#include "qsa/table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsa {

struct CodeSpec {
    std::string name;
    int n = 0, k = 0, d = 0;
    std::vector<std::string> transversal_gates;

    void validate() const;
};

enum class Protocol { SteaneEC713, MSI713, UniversalGateSet, Surface422 };
const char* to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

struct ResourceRow {
    Protocol protocol;
    int ions_per_well = 0;
    int registers = 0;
};

// minimal ions per well and number of wells (registers) for each protocol
ResourceRow resource_table(Protocol p, int surface_distance = 2);
Table resource_table_csv(int surface_distance);

int surface_qubits(int distance);  // d^2 + (d-1)^2 for the unrotated planar code
CodeSpec concatenated_surface_params(int distance);

// Pauli operator over n qubits as x and z bit rows
struct Pauli {
    std::vector<std::uint64_t> x, z;

    explicit Pauli(int n = 0);
    int size() const { return n_; }
    void set_x(int q) { x[q / 64] |= 1ULL << (q % 64); }
    void set_z(int q) { z[q / 64] |= 1ULL << (q % 64); }
    bool has_x(int q) const { return (x[q / 64] >> (q % 64)) & 1ULL; }
    bool has_z(int q) const { return (z[q / 64] >> (q % 64)) & 1ULL; }
    int weight() const;
    std::vector<int> support() const;
    bool commutes_with(const Pauli& o) const;  // symplectic product

private:
    int n_ = 0;
};

enum class WellRole { Data, Auxiliary };

struct Well {
    int id = 0;
    int row = 0, col = 0;
    int ions = 0;
    WellRole role = WellRole::Data;
};

struct Stabilizer {
    char type = 'X';           // X or Z
    std::vector<int> qubits;   // physical qubit indices, 4 per well in well order
    std::vector<int> wells;
    bool in_well = false;      // per-well [[4,2,2]] check

    int weight() const { return static_cast<int>(qubits.size()); }
};

struct LatticeLayout {
    CodeSpec code;
    int surface_distance = 0;
    std::vector<Well> wells;
    std::vector<std::pair<int, int>> edges;
    std::vector<Stabilizer> stabilizers;

    int physical_qubits() const;
    Pauli pauli(const Stabilizer& s) const;
    bool operator==(const LatticeLayout& o) const;
};

// surface code of the given distance with every data qubit replaced by a [[4,2,2]] well
LatticeLayout concatenated_stabilizers(int distance);

struct LayoutCheck {
    bool all_commute = false;
    int rank = 0;
    int encoded_qubits = 0;   // n - rank over GF(2)
    bool local = false;       // every support is a connected set of wells
    bool ion_counts_match = false;
};
LayoutCheck check_layout(const LatticeLayout& l);

int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int bits);

// smallest weight of a nontrivial X- or Z-type logical, searched up to max_weight
// (returns max_weight + 1 if none is found)
int css_distance(const LatticeLayout& l, char type, int max_weight);

std::string layout_to_json(const LatticeLayout& l);
LatticeLayout layout_from_json(const std::string& text);
std::string layout_to_dot(const LatticeLayout& l);

}  // namespace qsa
