#include "qsa/core.hpp"
#include "qsa/qec.hpp"

#include <gtest/gtest.h>

using namespace qsa;

TEST(Resources, ProtocolTable) {
    EXPECT_EQ(resource_table(Protocol::SteaneEC713).ions_per_well, 7);
    EXPECT_EQ(resource_table(Protocol::SteaneEC713).registers, 2);
    EXPECT_EQ(resource_table(Protocol::MSI713).registers, 2);
    EXPECT_EQ(resource_table(Protocol::UniversalGateSet).ions_per_well, 15);
    EXPECT_EQ(resource_table(Protocol::UniversalGateSet).registers, 7);
    EXPECT_EQ(resource_table(Protocol::Surface422, 3).ions_per_well, 4);
    EXPECT_EQ(resource_table(Protocol::Surface422, 3).registers, surface_qubits(3));
}

TEST(Resources, NamesRoundTrip) {
    for (auto p : {Protocol::SteaneEC713, Protocol::MSI713, Protocol::UniversalGateSet, Protocol::Surface422})
        EXPECT_EQ(protocol_from_string(to_string(p)), p);
    EXPECT_EQ(protocol_from_string("steane-ec"), Protocol::SteaneEC713);
    EXPECT_THROW(protocol_from_string("nope"), DomainError);
}

TEST(Pauli, Commutation) {
    Pauli a(3), b(3);
    a.set_x(0);
    b.set_z(0);
    EXPECT_FALSE(a.commutes_with(b));
    b.set_z(1);
    a.set_x(1);
    EXPECT_TRUE(a.commutes_with(b));
    EXPECT_EQ(a.weight(), 2);
}

TEST(Gf2, RankOfDependentRows) {
    EXPECT_EQ(gf2_rank({{0b011}, {0b110}, {0b101}}, 3), 2);
    EXPECT_EQ(gf2_rank({{0b001}, {0b010}, {0b100}}, 3), 3);
}

class Layout : public ::testing::TestWithParam<int> {};

TEST_P(Layout, StabilizerGroupIsValid) {
    const int dc = GetParam();
    const auto l = concatenated_stabilizers(dc);
    EXPECT_EQ(l.code.n, 4 * surface_qubits(dc));
    EXPECT_EQ(l.code.k, 2);
    EXPECT_EQ(l.code.d, 2 * dc);
    const auto c = check_layout(l);
    EXPECT_TRUE(c.all_commute);
    EXPECT_EQ(c.encoded_qubits, 2);
    EXPECT_TRUE(c.local);
    EXPECT_TRUE(c.ion_counts_match);
    for (const auto& w : l.wells) EXPECT_EQ(w.ions, 4);
}

TEST_P(Layout, LogicalWeightIsDistance) {
    const int dc = GetParam();
    const auto l = concatenated_stabilizers(dc);
    EXPECT_EQ(css_distance(l, 'X', 2 * dc), 2 * dc);
    EXPECT_EQ(css_distance(l, 'Z', 2 * dc), 2 * dc);
}

TEST_P(Layout, JsonRoundTrip) {
    const auto l = concatenated_stabilizers(GetParam());
    EXPECT_TRUE(layout_from_json(layout_to_json(l)) == l);
    EXPECT_NE(layout_to_dot(l).find("graph"), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(Distances, Layout, ::testing::Values(2, 3));

TEST(LayoutJson, MalformedRejected) {
    EXPECT_THROW(layout_from_json("{"), DomainError);
    EXPECT_THROW(layout_from_json("{\"wells\": 3}"), DomainError);
}

TEST(LayoutJson, SurfaceDistanceOneRejected) { EXPECT_THROW(concatenated_stabilizers(1), DomainError); }
