#include <doctest.h>

#include "moledrill/config.hpp"
#include "moledrill/drilling.hpp"
#include "moledrill/errors.hpp"

#include <cmath>
#include <random>

using namespace moledrill;
using doctest::Approx;

namespace {

// Hand-evaluation oracles, written out from the correlations directly in long double.
long double oracle_r_soft(long double rpm) {
    const long double e = std::exp(-100.0L / (rpm * rpm));
    return e * std::pow(rpm, 0.428L) + 0.2L * rpm * (1.0L - e);
}

long double oracle_rop(long double wob, long double rpm, long double s) {
    const long double wbar = 7.88L * wob / 202.0L;
    return s * std::pow(wbar, 1.6L) * oracle_r_soft(rpm) / std::sqrt(565.6L);
}

}  // namespace

TEST_CASE("torque from weight on bit") {
    const Config c = default_config();
    CHECK(torque_from_wob(93.3, c.soil, c.bit) == Approx(2.827).epsilon(2e-4));
    CHECK(torque_from_wob(0.0, c.soil, c.bit) == 0.0);
    CHECK(torque_from_wob(106.95, c.soil, c.bit) == Approx(3.241).epsilon(2e-4));
    CHECK_THROWS_AS(torque_from_wob(-1.0, c.soil, c.bit), DomainError);
}

TEST_CASE("motor curve") {
    const MotorSpec m;
    CHECK(motor_rpm(0.0, m) == 200.0);
    CHECK(motor_rpm(m.efficiency * m.stall_torque_nm, m) == 0.0);
    CHECK(motor_rpm(2.827, m) == Approx(123.8).epsilon(0.05 / 123.8));
    CHECK_THROWS_AS(motor_rpm(m.efficiency * m.stall_torque_nm * 1.0001, m), StallError);
}

TEST_CASE("rotary speed function") {
    CHECK(rotary_speed_r(0.0, FormationCondition::Soft) == 0.0);
    CHECK(rotary_speed_r(1e-3, FormationCondition::Soft) < 1e-3);
    CHECK(rotary_speed_r(124.49, FormationCondition::Soft) == Approx(7.99).epsilon(0.01 / 7.99));
    CHECK(rotary_speed_r(74.0, FormationCondition::Soft) == Approx(6.46).epsilon(0.01 / 6.46));
    CHECK(rotary_speed_r(124.49, FormationCondition::Soft) == Approx(double(oracle_r_soft(124.49L))).epsilon(1e-14));

    // hard branch: exponent 0.750, coefficient 0.5
    const double e = std::exp(-100.0 / (50.0 * 50.0));
    CHECK(rotary_speed_r(50.0, FormationCondition::Hard) ==
          Approx(e * std::pow(50.0, 0.75) + 0.5 * 50.0 * (1 - e)).epsilon(1e-14));
}

TEST_CASE("normalized weight and Galle rate") {
    const Config c = default_config();
    CHECK(normalized_wob(0.0, c.bit, c.galle) == 0.0);
    CHECK(normalized_wob(68.6, c.bit, c.galle) == Approx(2.676).epsilon(5e-4 / 2.676));
    CHECK(normalized_wob(93.3, c.bit, c.galle) == Approx(3.640).epsilon(5e-4 / 3.640));

    GalleConstants inches = c.galle;
    inches.diameter_unit = LengthUnit::Inches;
    CHECK(normalized_wob(93.3, c.bit, inches) == Approx(7.88 * 93.3 / (0.202 / 0.0254)));

    CHECK(galle_rop(0.0, 7.99, c.galle) == 0.0);
    // the listed inputs are rounded to 3-4 figures, which moves the rate by ~1e-3
    CHECK(galle_rop(3.640, 7.99, c.galle) == Approx(2.656).epsilon(2e-3 / 2.656));
    CHECK(galle_rop(2.676, 7.96, c.galle) == Approx(1.617).epsilon(2e-3 / 1.617));
}

TEST_CASE("specific energy") {
    Config c = default_config();
    CHECK(specific_energy(68.6, 150.0, 0.0, 1.0, c.bit) == 68.6 / contact_area(c.bit));

    c.bit.area_convention = AreaConvention::Annulus;
    CHECK(specific_energy(68.6, 124, 2.078, 0.5466, c.bit) / 1e6 == Approx(7.06).epsilon(0.05 / 7.06));
    c.bit.area_convention = AreaConvention::FullCircle;
    CHECK(specific_energy(68.6, 124, 2.078, 0.5466, c.bit) / 1e6 == Approx(5.55).epsilon(0.05 / 5.55));
    CHECK_THROWS_AS(specific_energy(68.6, 124, 2.078, 0.0, c.bit), InfeasibleRateError);
}

TEST_CASE("doubling the contact area halves specific energy") {
    BitGeometry g;
    g.area_convention = AreaConvention::Effective;
    g.effective_area_m2 = 0.02;
    const double base = specific_energy(90, 120, 2.7, 1.1, g);
    g.effective_area_m2 = 0.04;
    CHECK(specific_energy(90, 120, 2.7, 1.1, g) == base / 2.0);
}

TEST_CASE("solve_operating_point chains the correlations") {
    Config c = default_config();
    const OperatingPoint p = solve_operating_point(93.3, c.soil, c.motor, c.bit, c.galle);
    CHECK(p.torque_nm == Approx(2.827).epsilon(2e-4));
    CHECK(p.rpm == Approx(123.8).epsilon(0.05 / 123.8));
    CHECK(p.r_value == Approx(7.97).epsilon(0.01 / 7.97));
    CHECK(p.rop_m_hr == Approx(2.64).epsilon(0.02 / 2.64));
    CHECK(p.rop_m_hr == Approx(double(oracle_rop(93.3L, p.rpm, 1.0L))).epsilon(1e-13));

    // each stored field reproduces its own equation from the stored inputs
    CHECK(torque_from_wob(p.wob_n, c.soil, c.bit) == Approx(p.torque_nm).epsilon(1e-12));
    CHECK(motor_rpm(p.torque_nm, c.motor) == Approx(p.rpm).epsilon(1e-12));
    CHECK(rotary_speed_r(p.rpm, c.soil.condition) == Approx(p.r_value).epsilon(1e-12));
    CHECK(normalized_wob(p.wob_n, c.bit, c.galle) == Approx(p.wbar).epsilon(1e-12));
    CHECK(galle_rop(p.wbar, p.r_value, c.galle) == Approx(p.rop_m_hr).epsilon(1e-12));
    CHECK(specific_energy(p.wob_n, p.rpm, p.torque_nm, p.rop_m_hr, c.bit) ==
          Approx(p.specific_energy_pa).epsilon(1e-12));
    CHECK(p.specific_energy_pa >= p.wob_n / contact_area(c.bit));

    CHECK_THROWS_AS(solve_operating_point(0.0, c.soil, c.motor, c.bit, c.galle), InfeasibleRateError);
    CHECK_THROWS_AS(solve_operating_point(250.0, c.soil, c.motor, c.bit, c.galle), StallError);

    c.galle.calibration_scale = 0.378073;
    const double fitted = solve_operating_point(93.3, c.soil, c.motor, c.bit, c.galle).rop_m_hr;
    CHECK(fitted >= 0.9);
    CHECK(fitted <= 1.3);
}

TEST_CASE("stall load") {
    const Config c = default_config();
    CHECK(stall_wob(c.soil, c.motor, c.bit) == Approx(244.792).epsilon(1e-5));
}

TEST_CASE("monotonicity properties") {
    const Config c = default_config();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w(0.0, 240.0), a(0.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double wob = w(rng), k = a(rng);
        REQUIRE(torque_from_wob(k * wob, c.soil, c.bit) == Approx(k * torque_from_wob(wob, c.soil, c.bit)).epsilon(1e-14));
    }

    const double stall = c.motor.efficiency * c.motor.stall_torque_nm;
    double prev = motor_rpm(0.0, c.motor);
    for (int i = 1; i <= 1000; ++i) {
        const double rpm = motor_rpm(stall * i / 1000.0, c.motor);
        REQUIRE(rpm < prev);
        prev = rpm;
    }

    double last_r = rotary_speed_r(1.0, FormationCondition::Soft);
    for (int rpm = 2; rpm <= 300; ++rpm) {
        const double r = rotary_speed_r(rpm, FormationCondition::Soft);
        REQUIRE(r > last_r);
        last_r = r;
    }

    for (int i = 0; i < 500; ++i) {
        const double wbar = a(rng) + 0.01, r = a(rng) + 0.01, d = 0.01 + a(rng) * 0.1;
        REQUIRE(galle_rop(wbar + d, r, c.galle) > galle_rop(wbar, r, c.galle));
        REQUIRE(galle_rop(wbar, r + d, c.galle) > galle_rop(wbar, r, c.galle));
    }
}

TEST_CASE("over 30..140 N specific energy falls and ROP rises") {
    Config c = default_config();
    for (double s : {1.0, 0.378073}) {
        c.galle.calibration_scale = s;
        OperatingPoint prev = solve_operating_point(30.0, c.soil, c.motor, c.bit, c.galle);
        for (int w = 31; w <= 140; ++w) {
            const OperatingPoint p = solve_operating_point(w, c.soil, c.motor, c.bit, c.galle);
            REQUIRE(p.specific_energy_pa < prev.specific_energy_pa);
            REQUIRE(p.rop_m_hr > prev.rop_m_hr);
            prev = p;
        }
    }
}
