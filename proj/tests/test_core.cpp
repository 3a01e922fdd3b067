#include "qsa/core.hpp"
#include "qsa/parallel.hpp"
#include "qsa/table.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace qsa;

namespace {

// k = kappa q^2/(4 pi eps0 d^3), coupling k/(m w) for one ion per well
double pc_oracle(double omega, double d, double kap) {
    const auto sp = IonSpecies::calcium40();
    const double k = kap * sp.charge * sp.charge / (4 * M_PI * kEps0 * d * d * d);
    return k / (sp.mass * omega);
}

double exact_split(double omega, double d, double kap) {
    const auto sp = IonSpecies::calcium40();
    const double k = kap * sp.charge * sp.charge / (4 * M_PI * kEps0 * d * d * d);
    return std::sqrt(omega * omega + k / sp.mass) - std::sqrt(omega * omega - k / sp.mass);
}

}  // namespace

TEST(PointCharge, AxialMatchesDirectFormula) {
    const auto sp = IonSpecies::calcium40();
    const double c = point_charge_coupling(1, sp, rad(400e3), 56e-6, Orientation::Axial);
    EXPECT_NEAR(c, pc_oracle(rad(400e3), 56e-6, 2.0), 1e-9 * c);
    EXPECT_NEAR(hz(c), 2507.3, 0.1);
    // first order in k is enough at this distance
    EXPECT_NEAR(c, exact_split(rad(400e3), 56e-6, 2.0), 1e-5 * c);
}

TEST(PointCharge, RadialUsesHalfStrength) {
    const auto sp = IonSpecies::calcium40();
    const double c = point_charge_coupling(1, sp, rad(540e3), 29e-6, Orientation::Radial);
    EXPECT_NEAR(c, pc_oracle(rad(540e3), 29e-6, 1.0), 1e-9 * c);
    EXPECT_NEAR(hz(c), 6686.7, 0.1);
}

TEST(PointCharge, ExactPairRoundTrip) {
    const auto sp = IonSpecies::calcium40();
    const double k = point_charge_k_int(3, sp, 80e-6, Orientation::Axial);
    const auto [com, str] = exact_pair_frequencies(k, 3, sp, rad(400e3));
    EXPECT_NEAR(interaction_constant_from_splitting(std::abs(str - com), 3, sp, rad(400e3)), std::abs(k), 1e-9 * std::abs(k));
}

TEST(PointCharge, ValidityFlagsCloseWells) {
    const auto sp = IonSpecies::calcium40();
    EXPECT_TRUE(point_charge_valid(1, sp, rad(400e3), 100e-6, Orientation::Axial));
    EXPECT_FALSE(point_charge_valid(1, sp, rad(100e3), 3e-6, Orientation::Axial));
}

TEST(Potential, SeparationFromCoefficients) {
    const auto sp = IonSpecies::calcium40();
    const auto p = TrapPotential::axial(60e-6, rad(400e3), sp, rad(3e6), rad(3.1e6));
    EXPECT_NEAR(p.separation(), 60e-6, 1e-15);
    EXPECT_NEAR(std::sqrt(sp.charge * p.local_curvature() / sp.mass), rad(400e3), 1e-6);
}

TEST(Potential, RejectsBadSpecies) {
    IonSpecies bad;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Table, CsvHasHeaderAndUnits) {
    Table t({"a", "b", "s"}, {"Hz", "1", "text"});
    t.add_row({0.1, 3LL, std::string("ok")});
    EXPECT_EQ(t.to_csv(), "a,b,s\nHz,1,text\n0.1,3,ok\n");
    EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
    EXPECT_DOUBLE_EQ(t.number(0, "b"), 3.0);
}

TEST(Table, FormatIsStable) {
    EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_double(NAN), "nan");
}

TEST(Parallel, SlotsIndependentOfJobs) {
    std::vector<int> a(50), b(50);
    parallel_for(a.size(), 1, [&](std::size_t i) { a[i] = static_cast<int>(i * i); });
    parallel_for(b.size(), 4, [&](std::size_t i) { b[i] = static_cast<int>(i * i); });
    EXPECT_EQ(a, b);
}

TEST(Parallel, RethrowsLowestIndex) {
    try {
        parallel_for(10, 3, [](std::size_t i) {
            if (i == 2 || i == 7) throw std::runtime_error(std::to_string(i));
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "2");
    }
}
