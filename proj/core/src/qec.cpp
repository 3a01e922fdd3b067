#include "qsa/qec.hpp"

#include "qsa/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qsa {

void CodeSpec::validate() const {
    if (!(n >= k && k >= 1 && d >= 1)) throw DomainError("code parameters need n >= k >= 1 and d >= 1");
}

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::SteaneEC713: return "steane-ec";
        case Protocol::MSI713: return "msi";
        case Protocol::UniversalGateSet: return "universal-gate-set";
        case Protocol::Surface422: return "surface-422";
    }
    return "?";
}

Protocol protocol_from_string(const std::string& s) {
    for (auto p : {Protocol::SteaneEC713, Protocol::MSI713, Protocol::UniversalGateSet, Protocol::Surface422})
        if (s == to_string(p)) return p;
    if (s == "steane-ec-713") return Protocol::SteaneEC713;
    if (s == "msi-713") return Protocol::MSI713;
    throw DomainError("unknown protocol " + s);
}

int surface_qubits(int d) {
    if (d < 2) throw DomainError("surface distance must be at least 2");
    return d * d + (d - 1) * (d - 1);
}

ResourceRow resource_table(Protocol p, int dc) {
    switch (p) {
        case Protocol::SteaneEC713: return {p, 7, 2};
        case Protocol::MSI713: return {p, 7, 2};
        case Protocol::UniversalGateSet: return {p, 15, 7};
        case Protocol::Surface422: return {p, 4, surface_qubits(dc)};
    }
    throw DomainError("unknown protocol");
}

Table resource_table_csv(int dc) {
    Table t({"protocol", "ions_per_well", "registers"}, {"-", "1", "1"});
    for (auto p : {Protocol::SteaneEC713, Protocol::MSI713, Protocol::UniversalGateSet, Protocol::Surface422}) {
        const auto r = resource_table(p, dc);
        t.add_row({std::string(to_string(p)), static_cast<long long>(r.ions_per_well),
                   static_cast<long long>(r.registers)});
    }
    return t;
}

CodeSpec concatenated_surface_params(int dc) {
    CodeSpec c;
    c.name = "surface-" + std::to_string(dc) + "-x-422";
    c.n = 4 * surface_qubits(dc);
    c.k = 2;
    c.d = 2 * dc;
    c.transversal_gates = {"CNOT"};
    return c;
}

Pauli::Pauli(int n) : x((n + 63) / 64, 0), z((n + 63) / 64, 0), n_(n) {}

int Pauli::weight() const {
    int w = 0;
    for (std::size_t i = 0; i < x.size(); ++i) w += std::popcount(x[i] | z[i]);
    return w;
}

std::vector<int> Pauli::support() const {
    std::vector<int> s;
    for (int q = 0; q < n_; ++q)
        if (has_x(q) || has_z(q)) s.push_back(q);
    return s;
}

bool Pauli::commutes_with(const Pauli& o) const {
    if (o.n_ != n_) throw DomainError("Pauli size mismatch");
    int parity = 0;
    for (std::size_t i = 0; i < x.size(); ++i) parity += std::popcount(x[i] & o.z[i]) + std::popcount(z[i] & o.x[i]);
    return parity % 2 == 0;
}

int LatticeLayout::physical_qubits() const {
    int n = 0;
    for (const auto& w : wells) n += w.ions;
    return n;
}

Pauli LatticeLayout::pauli(const Stabilizer& s) const {
    Pauli p(physical_qubits());
    for (int q : s.qubits) s.type == 'X' ? p.set_x(q) : p.set_z(q);
    return p;
}

bool LatticeLayout::operator==(const LatticeLayout& o) const {
    auto well_eq = [](const Well& a, const Well& b) {
        return a.id == b.id && a.row == b.row && a.col == b.col && a.ions == b.ions && a.role == b.role;
    };
    auto stab_eq = [](const Stabilizer& a, const Stabilizer& b) {
        return a.type == b.type && a.qubits == b.qubits && a.wells == b.wells && a.in_well == b.in_well;
    };
    return code.name == o.code.name && code.n == o.code.n && code.k == o.code.k && code.d == o.code.d &&
           surface_distance == o.surface_distance && edges == o.edges &&
           std::equal(wells.begin(), wells.end(), o.wells.begin(), o.wells.end(), well_eq) &&
           std::equal(stabilizers.begin(), stabilizers.end(), o.stabilizers.begin(), o.stabilizers.end(), stab_eq);
}

// [[4,2,2]] logical operators on the qubits (0..3) of one well:
// first logical X = X0 X1, Z = Z0 Z2; second logical X = X0 X2, Z = Z0 Z1
static const int kLogicalX[2][2] = {{0, 1}, {0, 2}};
static const int kLogicalZ[2][2] = {{0, 2}, {0, 1}};

LatticeLayout concatenated_stabilizers(int dc) {
    const int side = 2 * dc - 1;
    LatticeLayout l;
    l.code = concatenated_surface_params(dc);
    l.surface_distance = dc;
    std::map<std::pair<int, int>, int> well_at;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            if ((r + c) % 2 == 0) {
                const int id = static_cast<int>(l.wells.size());
                well_at[{r, c}] = id;
                l.wells.push_back({id, r, c, 4, WellRole::Data});
            }
    for (const auto& w : l.wells)
        for (auto [dr, dcol] : {std::pair{1, -1}, std::pair{1, 1}}) {
            auto it = well_at.find({w.row + dr, w.col + dcol});
            if (it != well_at.end()) l.edges.emplace_back(w.id, it->second);
        }
    std::sort(l.edges.begin(), l.edges.end());

    // in-well checks
    for (const auto& w : l.wells)
        for (char t : {'X', 'Z'}) {
            Stabilizer s;
            s.type = t;
            s.in_well = true;
            s.wells = {w.id};
            for (int q = 0; q < 4; ++q) s.qubits.push_back(4 * w.id + q);
            l.stabilizers.push_back(s);
        }
    // surface checks (X on even rows / odd columns, Z on odd rows / even columns), one
    // copy per encoded qubit of the well code
    for (int copy = 0; copy < 2; ++copy)
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) {
                if ((r + c) % 2 == 0) continue;
                const char t = r % 2 == 0 ? 'X' : 'Z';
                Stabilizer s;
                s.type = t;
                for (auto [dr, dcol] : {std::pair{-1, 0}, std::pair{0, -1}, std::pair{0, 1}, std::pair{1, 0}}) {
                    auto it = well_at.find({r + dr, c + dcol});
                    if (it == well_at.end()) continue;
                    s.wells.push_back(it->second);
                    const auto& lift = t == 'X' ? kLogicalX[copy] : kLogicalZ[copy];
                    for (int q : lift) s.qubits.push_back(4 * it->second + q);
                }
                std::sort(s.wells.begin(), s.wells.end());
                std::sort(s.qubits.begin(), s.qubits.end());
                l.stabilizers.push_back(s);
            }
    return l;
}

int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int bits) {
    int rank = 0;
    for (int col = 0; col < bits && rank < static_cast<int>(rows.size()); ++col) {
        const int w = col / 64;
        const std::uint64_t m = 1ULL << (col % 64);
        auto piv = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return r[w] & m; });
        if (piv == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, piv);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i][w] & m))
                for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] ^= rows[rank][k];
        ++rank;
    }
    return rank;
}

LayoutCheck check_layout(const LatticeLayout& l) {
    LayoutCheck out;
    const int n = l.physical_qubits();
    std::vector<Pauli> ps;
    for (const auto& s : l.stabilizers) ps.push_back(l.pauli(s));
    out.all_commute = true;
    for (std::size_t i = 0; i < ps.size() && out.all_commute; ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (!ps[i].commutes_with(ps[j])) {
                out.all_commute = false;
                break;
            }
    std::vector<std::vector<std::uint64_t>> rows;
    const int words = (n + 63) / 64;
    for (const auto& p : ps) {
        // [x | z] packed into 2n bits
        std::vector<std::uint64_t> r(2 * words + 1, 0);
        for (int q = 0; q < n; ++q) {
            if (p.has_x(q)) r[q / 64] |= 1ULL << (q % 64);
            if (p.has_z(q)) r[(n + q) / 64] |= 1ULL << ((n + q) % 64);
        }
        rows.push_back(std::move(r));
    }
    out.rank = gf2_rank(rows, 2 * n);
    out.encoded_qubits = n - out.rank;

    std::map<int, std::set<int>> adj;
    for (auto [a, b] : l.edges) adj[a].insert(b), adj[b].insert(a);
    out.local = true;
    for (const auto& s : l.stabilizers) {
        std::set<int> want(s.wells.begin(), s.wells.end()), seen{s.wells.front()};
        std::vector<int> stack{s.wells.front()};
        while (!stack.empty()) {
            const int w = stack.back();
            stack.pop_back();
            for (int v : adj[w])
                if (want.count(v) && seen.insert(v).second) stack.push_back(v);
        }
        // qubits must belong to the listed wells
        for (int q : s.qubits)
            if (!want.count(q / 4)) out.local = false;
        if (seen != want) out.local = false;
    }
    out.ion_counts_match = l.physical_qubits() == l.code.n &&
                           std::all_of(l.wells.begin(), l.wells.end(), [](const Well& w) { return w.ions == 4; });
    return out;
}

int css_distance(const LatticeLayout& l, char type, int max_weight) {
    if (type != 'X' && type != 'Z') throw DomainError("logical type must be X or Z");
    const int n = l.physical_qubits();
    if (n > 64) throw DomainError("weight search supports up to 64 qubits");
    // an X-type operator is a logical if it commutes with every Z check and is not in the X-check span
    const char other = type == 'X' ? 'Z' : 'X';
    std::vector<std::uint64_t> checks, same;
    for (const auto& s : l.stabilizers) {
        std::uint64_t m = 0;
        for (int q : s.qubits) m |= 1ULL << q;
        (s.type == other ? checks : same).push_back(m);
    }
    // reduce the same-type span to echelon form for membership tests
    std::vector<std::uint64_t> basis;
    for (auto v : same) {
        for (auto b : basis) v = std::min(v, v ^ b);
        if (v) {
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    auto in_span = [&](std::uint64_t v) {
        for (auto b : basis) v = std::min(v, v ^ b);
        return v == 0;
    };
    int found = max_weight + 1;
    std::vector<int> idx;
    std::function<bool(int, std::uint64_t)> rec = [&](int start, std::uint64_t v) {
        if (v && static_cast<int>(idx.size()) >= 1) {
            bool commute = true;
            for (auto c : checks)
                if (std::popcount(c & v) % 2) {
                    commute = false;
                    break;
                }
            if (commute && !in_span(v)) return true;
        }
        if (static_cast<int>(idx.size()) == found - 1) return false;
        for (int q = start; q < n; ++q) {
            idx.push_back(q);
            if (rec(q + 1, v | (1ULL << q))) return true;
            idx.pop_back();
        }
        return false;
    };
    // iterative deepening keeps the first hit at minimal weight
    for (int w = 1; w <= max_weight; ++w) {
        found = w + 1;
        idx.clear();
        if (rec(0, 0)) return w;
    }
    return max_weight + 1;
}

using nlohmann::json;

std::string layout_to_json(const LatticeLayout& l) {
    json j;
    j["code"] = {{"name", l.code.name}, {"n", l.code.n}, {"k", l.code.k}, {"d", l.code.d},
                 {"transversal_gates", l.code.transversal_gates}};
    j["surface_distance"] = l.surface_distance;
    j["wells"] = json::array();
    for (const auto& w : l.wells)
        j["wells"].push_back({{"id", w.id}, {"row", w.row}, {"col", w.col}, {"ions", w.ions},
                              {"role", w.role == WellRole::Data ? "data" : "auxiliary"}});
    j["edges"] = json::array();
    for (auto [a, b] : l.edges) j["edges"].push_back({a, b});
    j["stabilizers"] = json::array();
    for (const auto& s : l.stabilizers)
        j["stabilizers"].push_back({{"type", std::string(1, s.type)}, {"weight", s.weight()},
                                    {"wells", s.wells}, {"qubits", s.qubits}, {"in_well", s.in_well}});
    return j.dump(2) + "\n";
}

LatticeLayout layout_from_json(const std::string& text) {
    LatticeLayout l;
    try {
        const json j = json::parse(text);
        const auto& c = j.at("code");
        l.code.name = c.at("name").get<std::string>();
        l.code.n = c.at("n").get<int>();
        l.code.k = c.at("k").get<int>();
        l.code.d = c.at("d").get<int>();
        l.code.transversal_gates = c.at("transversal_gates").get<std::vector<std::string>>();
        l.surface_distance = j.at("surface_distance").get<int>();
        for (const auto& w : j.at("wells"))
            l.wells.push_back({w.at("id").get<int>(), w.at("row").get<int>(), w.at("col").get<int>(),
                               w.at("ions").get<int>(),
                               w.at("role").get<std::string>() == "data" ? WellRole::Data : WellRole::Auxiliary});
        for (const auto& e : j.at("edges")) l.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        for (const auto& s : j.at("stabilizers")) {
            Stabilizer st;
            st.type = s.at("type").get<std::string>().at(0);
            st.wells = s.at("wells").get<std::vector<int>>();
            st.qubits = s.at("qubits").get<std::vector<int>>();
            st.in_well = s.at("in_well").get<bool>();
            l.stabilizers.push_back(std::move(st));
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed layout: ") + e.what());
    }
    return l;
}

std::string layout_to_dot(const LatticeLayout& l) {
    std::ostringstream os;
    os << "graph wells {\n";
    for (const auto& w : l.wells)
        os << "  w" << w.id << " [label=\"" << w.id << " (" << w.ions << ")\", pos=\"" << w.col << ","
           << -w.row << "!\"];\n";
    for (auto [a, b] : l.edges) os << "  w" << a << " -- w" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace qsa
