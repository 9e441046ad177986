#include <doctest.h>

#include "moledrill/bit_kinematics.hpp"
#include "moledrill/config.hpp"
#include "moledrill/datasets.hpp"
#include "moledrill/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace moledrill;

TEST_CASE("empty document yields the published parameter set") {
    const Config c = load_config("");
    CHECK(c.soil.compressive_strength_pa == 4.0e6);
    CHECK(c.soil.friction == 0.45);
    CHECK(c.soil.density_kg_m3 == 650.0);
    CHECK(c.soil.condition == FormationCondition::Soft);
    CHECK(c.motor.stall_torque_nm == 8.83);
    CHECK(c.motor.no_load_rpm == 200.0);
    CHECK(c.motor.efficiency == 0.84);
    CHECK(c.bit.folded_diameter_m == 0.0934);
    CHECK(c.bit.expanded_diameter_m == 0.202);
    CHECK(c.bit.inner_blades == 3);
    CHECK(c.bit.expandable_blades == 3);
    CHECK(c.galle.dullness == 565.6);
    CHECK(c.galle.wbar_scale == 7.88);
    CHECK(c.caster.spring_rate_n_per_mm == 0.077);
    CHECK(c.forelimb.actuator_force_n == 80.0);
    CHECK(c.cycle.depth_per_cycle_m == 0.030);
    CHECK(c == default_config());
}

TEST_CASE("default configuration passes every invariant") {
    CHECK_NOTHROW(validate(default_config()));
}

TEST_CASE("bound violations name the field") {
    try {
        load_config("[motor]\neta = 1.2\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "eta");
    }
    CHECK_THROWS_AS(load_config("[soil]\nmu = 2.5\n"), ValidationError);
    CHECK_THROWS_AS(load_config("[soil]\nbulking = 0.9\n"), ValidationError);
    CHECK_THROWS_AS(load_config("[bit]\nd_folded = 0.3\n"), ValidationError);
    CHECK_THROWS_AS(load_config("[galle]\ns_cal = 0\n"), ValidationError);
    CHECK_THROWS_AS(load_config("[caster]\ntheta = 90\n"), ValidationError);
    CHECK_THROWS_AS(load_config("[cycle]\ndepth_per_cycle = 0\n"), ValidationError);
}

TEST_CASE("parse failures carry a line or field") {
    try {
        load_config("[soil]\nmu = 0.4\nmu = 0.5\n");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
    try {
        load_config("[soil]\nmu = abc\n");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "soil.mu");
    }
    CHECK_THROWS_AS(load_config("[soil]\nfoo = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("[rocks]\nmu = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("[bit]\narea_convention = square\n"), ConfigError);
    CHECK_THROWS_AS(load_config("[bit]\nblade_count_inner = 2.5\n"), ConfigError);
}

TEST_CASE("comments and overrides") {
    const Config c = load_config("# target\n[soil]\n; strength\nsigma_c = 2e6  # weaker block\n",
                                 {"soil.mu=0.5", "galle.d_unit=in"});
    CHECK(c.soil.compressive_strength_pa == 2e6);
    CHECK(c.soil.friction == 0.5);
    CHECK(c.galle.diameter_unit == LengthUnit::Inches);

    // command line beats the file
    const Config o = load_config("[soil]\nmu = 0.3\n", {"soil.mu=0.6"});
    CHECK(o.soil.friction == 0.6);
    CHECK_THROWS_AS(load_config("", {"mu=0.6"}), ConfigError);
}

TEST_CASE("expandability ratio from configured diameters") {
    const Config c = load_config("[bit]\nd_folded = 0.0934\nd_expanded = 0.202\n");
    CHECK(expansion_ratio(c.bit) == doctest::Approx(2.163).epsilon(0.0005 / 2.163));
}

TEST_CASE("k_trans is fitted unless given") {
    CHECK(default_config().forelimb.transmission == doctest::Approx(0.262227).epsilon(1e-5));
    CHECK(load_config("[forelimb]\nk_trans = 0.3\n").forelimb.transmission == 0.3);
    const Config c = load_config("[forelimb]\ntable4 = 40:90:32, 80:100:32\n");
    CHECK(c.forelimb.push_table.size() == 2);
    CHECK(c.forelimb.transmission == doctest::Approx(fit_k_trans(c.forelimb)));
}

TEST_CASE("contact area conventions") {
    BitGeometry g;
    g.area_convention = AreaConvention::FullCircle;
    CHECK(contact_area(g) == doctest::Approx(0.032047).epsilon(1e-5));
    g.area_convention = AreaConvention::Annulus;
    CHECK(contact_area(g) == doctest::Approx(0.025196).epsilon(1e-5));
    g.area_convention = AreaConvention::Effective;
    g.effective_area_m2 = 0.03;
    CHECK(contact_area(g) == 0.03);
    CHECK_THROWS_AS(load_config("[bit]\narea_convention = effective\n"), ValidationError);
}

TEST_CASE("annulus is always smaller than the full circle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> folded(0.01, 0.2);
    std::uniform_real_distribution<double> extra(1e-4, 0.3);
    for (int i = 0; i < 2000; ++i) {
        BitGeometry g;
        g.folded_diameter_m = folded(rng);
        g.expanded_diameter_m = g.folded_diameter_m + extra(rng);
        g.area_convention = AreaConvention::FullCircle;
        const double full = contact_area(g);
        g.area_convention = AreaConvention::Annulus;
        REQUIRE(contact_area(g) < full);
    }
}

TEST_CASE("serialize then load reproduces every field") {
    CHECK(load_config(serialize_config(default_config())) == default_config());

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Config c = default_config();
        c.soil.compressive_strength_pa = 1e5 + u(rng) * 1e7;
        c.soil.friction = 0.05 + 1.9 * u(rng);
        c.soil.condition = u(rng) < 0.5 ? FormationCondition::Soft : FormationCondition::Hard;
        c.soil.bulking = 1.0 + u(rng);
        c.motor.efficiency = 0.1 + 0.9 * u(rng);
        c.bit.folded_diameter_m = 0.05 + 0.05 * u(rng);
        c.bit.expanded_diameter_m = c.bit.folded_diameter_m + 0.2 * u(rng) + 1e-3;
        c.bit.area_convention = static_cast<AreaConvention>(i % 3);
        c.bit.effective_area_m2 = 0.01 + u(rng);
        c.galle.diameter_unit = static_cast<LengthUnit>(i % 3);
        c.galle.calibration_scale = 0.1 + u(rng);
        c.caster.cornering_force_n = 5 * u(rng);
        c.forelimb.transmission = u(rng);
        c.forelimb.push_table[2].max_force_n = 30 + 10 * u(rng);
        c.cycle.target_depth_m = u(rng);
        c.sweep.step_n = 0.1 + u(rng);
        REQUIRE(load_config(serialize_config(c)) == c);
    }
}

TEST_CASE("drilling table conversion") {
    std::istringstream in("# comment\nlabel,wob_kgf_added,depth_mm,rpm,e_s_mpa\nW,0,91.09,124,6.58\nW+0.5,0.5,16.63,110,6.12\n");
    const auto rows = parse_drill_table(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].wob_n == doctest::Approx(7.0 * 9.81));
    CHECK(rows[0].measured_rop_m_hr() == doctest::Approx(0.54654));
    CHECK(rows[0].reported_specific_energy_pa == doctest::Approx(6.58e6));
    CHECK_FALSE(rows[0].outlier);
    CHECK(rows[1].outlier);

    std::istringstream bad_header("label,wob,depth_mm,rpm,e_s_mpa\n");
    CHECK_THROWS_AS(parse_drill_table(bad_header), ConfigError);
    std::istringstream bad_cell("label,wob_kgf_added,depth_mm,rpm,e_s_mpa\nW,0,x,124,6.58\n");
    try {
        parse_drill_table(bad_cell);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "depth_mm");
    }
    std::istringstream negative("label,wob_kgf_added,depth_mm,rpm,e_s_mpa\nW,0,-1,124,6.58\n");
    CHECK_THROWS_AS(parse_drill_table(negative), ConfigError);
}

TEST_CASE("bundled datasets load") {
    const auto drill = load_drill_table(std::string(MOLEDRILL_DATA_DIR) + "/table3.csv");
    REQUIRE(drill.size() == 5);
    CHECK(drill[4].label == "W+5.0");
    CHECK(drill[4].drilled_depth_m == doctest::Approx(0.23331));
    const auto push = load_push_table(std::string(MOLEDRILL_DATA_DIR) + "/table4.csv");
    CHECK(push == default_push_table());
    CHECK_THROWS_AS(load_drill_table("/definitely/missing.csv"), ConfigError);
}
